//! One function per subcommand, each producing a [`Table`].

use crate::cavity::{cavity_shift_report, debye_shift_per_molecule, thermal_ratio_debye};
use crate::error::{Error, Result};
use crate::kinetics::selectivity_sweep;
use crate::pasteur::{energy_unit_ev, halfspace_sweep, reflection_limit, z_unit_nm, HalfspaceResult};

use super::config::Resolved;
use super::output::{Cell, Table};

use Cell::{Int, Num, Text};

pub fn pasteur(r: &Resolved) -> Result<Table> {
    let mut t = Table::new(vec![
        ("z_over_zunit", "1"),
        ("z_nm", "nm"),
        ("shift_over_Eunit", "1"),
        ("shift_meV", "meV"),
        ("nonretarded_over_Eunit", "1"),
        ("nonretarded_meV", "meV"),
        ("quad_error", "E_unit"),
        ("converged", "1"),
    ]);
    t.meta("z_unit_nm", z_unit_nm(&r.molecule));
    t.meta("E_unit_eV", energy_unit_ev(&r.molecule));
    t.meta("r_inf", reflection_limit(&r.material));
    let z_unit = z_unit_nm(&r.molecule);
    let e_unit = energy_unit_ev(&r.molecule);
    for (i, (z, res)) in r
        .z_grid
        .iter()
        .zip(halfspace_sweep(&r.z_grid, &r.molecule, &r.material, &r.quadrature)?)
        .enumerate()
    {
        let row = |p: &HalfspaceResult, ok: u64| {
            vec![
                Num(p.z_over_zunit),
                Num(p.z_nm),
                Num(p.shift_over_eunit),
                Num(p.shift_mev),
                Num(p.nonretarded_over_eunit),
                Num(p.nonretarded_mev),
                Num(p.quadrature_error_over_eunit),
                Int(ok),
            ]
        };
        match res {
            Ok(p) => t.push(row(&p, 1)),
            Err(e) => {
                let (value, err) = match &e {
                    Error::Quadrature {
                        partial,
                        error_estimate,
                        ..
                    } => (*partial, *error_estimate),
                    _ => (f64::NAN, f64::NAN),
                };
                let nr = crate::pasteur::chiral_shift_nonretarded(z * z_unit, &r.molecule, &r.material)
                    .unwrap_or(f64::NAN);
                let p = HalfspaceResult {
                    z_over_zunit: *z,
                    z_nm: z * z_unit,
                    shift_over_eunit: value / e_unit,
                    shift_mev: value * 1e3,
                    nonretarded_over_eunit: nr / e_unit,
                    nonretarded_mev: nr * 1e3,
                    quadrature_error_over_eunit: err / e_unit.abs(),
                };
                t.push(row(&p, 0));
                t.failures.push((i, e.to_string()));
            }
        }
    }
    Ok(t)
}

pub fn cavity(r: &Resolved) -> Result<Table> {
    let rep = cavity_shift_report(&r.modes, &r.molecule, Some(&r.ensemble), r.thermal)?;
    let mut t = Table::new(vec![
        ("mode", "1"),
        ("omega_eV", "eV"),
        ("veff_nm3", "nm^3"),
        ("chirality", "1"),
        ("london_T0_meV", "meV"),
        ("london_ratio", "1"),
        ("london_T_meV", "meV"),
        ("debye_per_molecule_T0_meV", "meV"),
        ("debye_ratio", "1"),
        ("debye_per_molecule_T_meV", "meV"),
        ("resonant", "1"),
    ]);
    t.meta("temperature_K", rep.temperature_k);
    t.meta("n_molecules", r.ensemble.n_molecules);
    let ratio = |a: f64, b: f64| if b != 0.0 { a / b } else { f64::NAN };
    for (i, m) in rep.modes.iter().enumerate() {
        t.push(vec![
            Int(i as u64 + 1),
            Num(m.mode.omega_ev),
            Num(m.mode.veff_nm3),
            Num(m.mode.chirality),
            Num(m.london_t0_ev * 1e3),
            Num(m.london_ratio.unwrap_or(f64::NAN)),
            Num(m.london_ev * 1e3),
            Num(m.debye_t0_ev.unwrap_or(f64::NAN) * 1e3),
            Num(m.debye_ratio.unwrap_or(f64::NAN)),
            Num(m.debye_ev.unwrap_or(f64::NAN) * 1e3),
            Int(m.resonant as u64),
        ]);
    }
    let d0 = rep.debye_total_t0_ev.unwrap_or(f64::NAN);
    let dt = rep.debye_total_ev.unwrap_or(f64::NAN);
    t.push(vec![
        Text("total".into()),
        Num(f64::NAN),
        Num(f64::NAN),
        Num(f64::NAN),
        Num(rep.london_total_t0_ev * 1e3),
        Num(ratio(rep.london_total_ev, rep.london_total_t0_ev)),
        Num(rep.london_total_ev * 1e3),
        Num(d0 * 1e3),
        Num(ratio(dt, d0)),
        Num(dt * 1e3),
        Int(rep.resonant_modes().count() as u64),
    ]);
    Ok(t)
}

pub fn debye(r: &Resolved) -> Result<Table> {
    let mut t = Table::new(vec![
        ("n_molecules", "1"),
        ("per_molecule_T0_meV", "meV"),
        ("total_T0_meV", "meV"),
        ("per_molecule_T_meV", "meV"),
        ("total_T_meV", "meV"),
        ("mirror_per_molecule_T0_meV", "meV"),
    ]);
    t.meta("temperature_K", r.thermal.kelvin());
    for &n in &r.n_sweep {
        let ens = r.ensemble.with_count(n)?;
        let per = debye_shift_per_molecule(&r.modes, &ens);
        let mirror = debye_shift_per_molecule(&r.modes, &ens.mirror());
        let mut per_t = 0.0;
        for mode in r.modes.modes() {
            per_t += crate::cavity::debye_shift_mode(mode, &ens) * thermal_ratio_debye(mode.omega_ev, r.thermal)?;
        }
        let nf = n as f64;
        t.push(vec![
            Int(n),
            Num(per * 1e3),
            Num(nf * per * 1e3),
            Num(per_t * 1e3),
            Num(nf * per_t * 1e3),
            Num(mirror * 1e3),
        ]);
    }
    Ok(t)
}

pub fn selectivity(r: &Resolved, with_tst: bool) -> Result<Table> {
    let mut cols = vec![("delta_e_meV", "meV"), ("temperature_K", "K"), ("p_chi", "1")];
    if with_tst {
        cols.extend([("e_a_eV", "eV"), ("delta_omega_eV", "eV"), ("p_chi_tst", "1")]);
    }
    let mut t = Table::new(cols);
    let profile = with_tst.then_some(&r.profile);
    if let Some(p) = profile {
        let a = crate::kinetics::tst_activation(p);
        if a.unphysical {
            t.meta("warning", format!("activation energy {} eV is negative", a.e_a_ev));
        }
    }
    let curve = selectivity_sweep(&r.delta_e_mev, &r.temperatures, profile)?;
    for p in curve.points {
        let mut row = vec![Num(p.delta_e_mev), Num(p.temperature_k), Num(p.p_chi)];
        if let Some(tst) = p.tst {
            row.extend([Num(tst.e_a_ev), Num(tst.delta_omega_ev), Num(tst.p_chi_tst)]);
        }
        t.push(row);
    }
    Ok(t)
}
