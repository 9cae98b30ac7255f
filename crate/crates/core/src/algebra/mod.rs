//! Quantum-torus arithmetic: Laurent scalars, quasi-commuting generators and
//! polynomials kept in a fixed normal form.

mod laurent;
mod monomial;
mod poly;
mod table;

pub use laurent::LaurentPoly;
pub use monomial::{nc_mul_mono, NcMonomial};
pub use poly::{poly_mul, poly_qpower_ratio, NcPolynomial};
pub use table::CommutationTable;

#[cfg(test)]
mod tests {
    use super::*;

    type P = NcPolynomial<i64>;

    fn two_gens(c: i8) -> CommutationTable {
        let mut t = CommutationTable::new(vec!["u".into(), "v".into()]);
        t.set(0, 1, c).unwrap();
        t
    }

    #[test]
    fn swapping_two_letters() {
        // u < v and u v = q v u, so v u = q^-1 u v.
        let t = two_gens(1);
        let (m, d) = nc_mul_mono(&NcMonomial::generator(1), &NcMonomial::generator(0), &t).unwrap();
        assert_eq!(m, NcMonomial::from_sorted_pairs([(0, 1), (1, 1)]));
        assert_eq!(d, -1);
        let (m2, d2) = nc_mul_mono(&NcMonomial::generator(0), &NcMonomial::generator(1), &t).unwrap();
        assert_eq!((m2, d2), (m, 0));
    }

    #[test]
    fn inverse_cancels() {
        let t = two_gens(1);
        let a = NcMonomial::power(1, 2);
        let b = NcMonomial::from_sorted_pairs([(0, 3), (1, -2)]);
        let (m, d) = nc_mul_mono(&a, &b, &t).unwrap();
        assert_eq!(m, NcMonomial::power(0, 3));
        // v^2 u^3 = q^{2*3*c(v,u)} u^3 v^2 with c(v,u) = -1.
        assert_eq!(d, -6);
    }

    #[test]
    fn unknown_generator_is_rejected() {
        let t = two_gens(0);
        assert!(nc_mul_mono(&NcMonomial::generator(5), &NcMonomial::one(), &t).is_err());
    }

    #[test]
    fn rendering_is_canonical() {
        let t = two_gens(1);
        let u = P::from_qmonomial(NcMonomial::generator(0), 0);
        let v = P::from_qmonomial(NcMonomial::generator(1), 0);
        let uv = u.mul(&v, &t).unwrap();
        let vu = v.mul(&u, &t).unwrap();
        let diff = uv.sub_ref(&vu);
        assert_eq!(diff.render(&t), "(1 - q^-1)*u*v");
        assert_eq!(vu.render(&t), "q^-1*u*v");
        assert_eq!(vu.neg().render(&t), "-q^-1*u*v");
        assert_eq!(P::zero().render(&t), "0");
        assert_eq!(P::one().render(&t), "1");
        assert_eq!(poly_qpower_ratio(&uv, &vu), Some(1));
    }
}
