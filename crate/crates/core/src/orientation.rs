//! Isotropic orientation average of the chiral coupling.

use num_complex::Complex64;

pub type Vec3 = [f64; 3];
pub type CVec3 = [Complex64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Bilinear (non-conjugating) product of two complex vectors.
pub fn cdot(a: &CVec3, b: &CVec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `Re[(d·E)(m·B)]` for one fixed orientation.
pub fn oriented_coupling(d: &Vec3, m: &Vec3, e: &CVec3, b: &CVec3) -> f64 {
    let de: Complex64 = (0..3).map(|i| e[i] * d[i]).sum();
    let mb: Complex64 = (0..3).map(|i| b[i] * m[i]).sum();
    (de * mb).re
}

/// Exact SO(3) average of `Re[(Rd·E)(Rm·B)]`, which is `Re[(d·m)(E·B)]/3`.
pub fn isotropic_average(d: &Vec3, m: &Vec3, e: &CVec3, b: &CVec3) -> f64 {
    dot(d, m) * cdot(e, b).re / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(v: Vec3) -> CVec3 {
        v.map(|x| Complex64::new(x, 0.0))
    }

    #[test]
    fn aligned_unit_vectors() {
        let x = [1.0, 0.0, 0.0];
        assert!((isotropic_average(&x, &x, &real(x), &real(x)) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_dipoles_vanish() {
        let d = [1.0, 2.0, 0.0];
        let m = [-2.0, 1.0, 5.0];
        let e = [Complex64::new(0.3, 1.0), Complex64::new(2.0, -1.0), Complex64::new(0.0, 4.0)];
        let b = [Complex64::new(1.0, 1.0), Complex64::new(-3.0, 0.5), Complex64::new(2.0, 0.0)];
        assert_eq!(isotropic_average(&d, &m, &e, &b), 0.0);
    }

    fn cvec() -> impl Strategy<Value = CVec3> {
        prop::array::uniform3((-2.0f64..2.0, -2.0f64..2.0))
            .prop_map(|a| a.map(|(re, im)| Complex64::new(re, im)))
    }

    proptest! {
        #[test]
        fn odd_under_parity(d in prop::array::uniform3(-2.0f64..2.0),
                            m in prop::array::uniform3(-2.0f64..2.0),
                            e in cvec(), b in cvec()) {
            let nd = d.map(|x| -x);
            let a = isotropic_average(&d, &m, &e, &b);
            prop_assert_eq!(isotropic_average(&nd, &m, &e, &b), -a);
        }

        #[test]
        fn bilinear_in_dipoles(d in prop::array::uniform3(-2.0f64..2.0),
                               m in prop::array::uniform3(-2.0f64..2.0),
                               e in cvec(), b in cvec(), s in -3.0f64..3.0) {
            let a = isotropic_average(&d, &m, &e, &b);
            let sd = d.map(|x| s * x);
            let scaled = isotropic_average(&sd, &m, &e, &b);
            prop_assert!((scaled - s * a).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}
