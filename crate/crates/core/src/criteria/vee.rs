//! The ∨-product: the polynomial whose roots are all products `αβ` of a root
//! `α` of `f1` and a root `β` of `f2`.

use num_integer::Integer;

use super::uniform_exponent;
use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::gf2poly::BinaryPolynomial;
use crate::lfsr::berlekamp_massey;

fn check_inputs(f1: &BinaryPolynomial, f2: &BinaryPolynomial) -> Result<(u64, u64)> {
    let r1 = uniform_exponent(f1)?;
    let r2 = uniform_exponent(f2)?;
    if r1.gcd(&r2) != 1 {
        return Err(Error::NotCoprime(r1, r2));
    }
    Ok((r1, r2))
}

/// Characteristic polynomial of the Kronecker product of the two companion
/// matrices; its eigenvalues are exactly the products of eigenvalues.
pub fn vee_by_kronecker(f1: &BinaryPolynomial, f2: &BinaryPolynomial) -> BinaryPolynomial {
    BitMatrix::companion(f1).kronecker(&BitMatrix::companion(f2)).charpoly()
}

/// Sequence generated by `f` from the seed `0, ..., 0, 1`, one period long.
fn impulse_response(f: &BinaryPolynomial, period: usize) -> Vec<bool> {
    let n = f.deg();
    let taps: Vec<usize> = f.powers().into_iter().filter(|&i| i > 0).collect();
    let mut s = vec![false; n.max(period)];
    s[n - 1] = true;
    for k in n..s.len() {
        s[k] = taps.iter().fold(false, |acc, &i| acc ^ s[k - i]);
    }
    s.truncate(period);
    s
}

/// Least common multiple of the minimal polynomials of the bitwise products
/// `a(k + i) b(k + j)`, over shift pairs `(i, j)` until the degree reaches
/// `deg f1 deg f2`. The impulse responses have minimal polynomials `f1` and
/// `f2`, so these products span the sequence space of the ∨-product.
pub fn vee_by_sequences(f1: &BinaryPolynomial, f2: &BinaryPolynomial) -> Result<BinaryPolynomial> {
    let (r1, r2) = check_inputs(f1, f2)?;
    let (r1, r2) = (r1 as usize, r2 as usize);
    let target = f1.deg() * f2.deg();
    let a = impulse_response(f1, r1);
    let b = impulse_response(f2, r2);
    let samples = 2 * target;
    let mut acc = BinaryPolynomial::one();
    for i in 0..r1 {
        for j in 0..r2 {
            let s: Vec<bool> = (0..samples).map(|k| a[(k + i) % r1] & b[(k + j) % r2]).collect();
            let m = berlekamp_massey(&s);
            acc = acc.lcm(&m)?;
            if acc.deg() >= target {
                return Ok(acc);
            }
        }
    }
    Err(Error::Consistency(format!("products of shifted sequences only reach degree {} of {target}", acc.deg())))
}

/// `f1 ∨ f2`, computed by both methods and cross-checked.
///
/// Inputs must be square-free with uniform, coprime exponents.
pub fn vee(f1: &BinaryPolynomial, f2: &BinaryPolynomial) -> Result<BinaryPolynomial> {
    check_inputs(f1, f2)?;
    let by_matrix = vee_by_kronecker(f1, f2);
    let by_sequences = vee_by_sequences(f1, f2)?;
    if by_matrix != by_sequences {
        return Err(Error::Consistency(format!(
            "vee({f1}, {f2}): characteristic polynomial {by_matrix} differs from sequence span {by_sequences}"
        )));
    }
    Ok(by_matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::gf2poly::{exponent, factor, product};

    fn p(s: &str) -> BinaryPolynomial {
        s.parse().unwrap()
    }

    fn ones(n: usize) -> BinaryPolynomial {
        BinaryPolynomial::from_powers(&(0..=n).rev().collect::<Vec<_>>())
    }

    /// Roots taken in a common field: with `α` generating GF(2^12), the
    /// minimal polynomials of `α^273` and `α^585` are the inputs, and the
    /// product root `α^858` has the ∨-product as minimal polynomial.
    #[test]
    fn agrees_with_roots_in_common_field() {
        let k = FieldContext::new(p("x^12+x^7+x^6+x^5+x^3+x+1")).unwrap();
        let alpha = k.generator();
        let beta = alpha.pow(273).unwrap();
        let gamma = alpha.pow(585).unwrap();
        assert_eq!(beta.minimal_polynomial(), p("x^4+x+1"));
        assert_eq!(gamma.minimal_polynomial(), p("x^3+x+1"));
        let g = beta.mul(&gamma).unwrap().minimal_polynomial();
        assert_eq!(g, vee(&p("x^4+x+1"), &p("x^3+x+1")).unwrap());
    }

    #[test]
    fn golden_values() {
        let cases = [
            ("x^4+x+1", "x^3+x+1", "x^12+x^9+x^5+x^4+x^3+x+1"),
            ("x^4+x+1", "x^3+x^2+1", "x^12+x^8+x^6+x^5+x^3+x^2+1"),
            ("x^4+x^3+1", "x^3+x+1", "x^12+x^10+x^9+x^7+x^6+x^4+1"),
            ("x^4+x^3+1", "x^3+x^2+1", "x^12+x^11+x^9+x^8+x^7+x^3+1"),
            ("x^4+x^3+x^2+x+1", "x^6+x^3+1", "x^24+x^21+x^15+x^12+x^9+x^3+1"),
            ("x^4+x^3+x^2+x+1", "x^3+x^2+1", "x^12+x^11+x^10+x^8+x^5+x^4+x^3+x^2+1"),
        ];
        for (f1, f2, g) in cases {
            assert_eq!(vee(&p(f1), &p(f2)).unwrap(), p(g), "{f1} v {f2}");
        }
    }

    #[test]
    fn factored_golden_values() {
        let g = vee(&p("x^4+x^3+x^2+x+1"), &p("x^9+x+1")).unwrap();
        assert_eq!(g, p("x^36+x^28+x^27+x^20+x^18+x^12+x^10+x^9+x^4+x^3+x^2+x+1"));
        assert_eq!(exponent(&g).unwrap(), 365);

        let g = vee(&p("x^4+x^3+x^2+x+1"), &p("x^6+x^5+1")).unwrap();
        assert_eq!(g, &p("x^12+x^4+x^2+x+1") * &p("x^12+x^11+x^10+x^9+x^8+x^6+x^3+x+1"));
        let g = vee(&ones(6), &p("x^2+x+1")).unwrap();
        assert_eq!(g, &p("x^6+x^4+x^2+x+1") * &p("x^6+x^5+x^4+x^2+1"));

        let g = vee(&ones(6), &ones(10)).unwrap();
        assert_eq!(g.deg(), 60);
        let mut expected = vec![
            p("x^30+x^28+x^27+x^26+x^23+x^21+x^20+x^19+x^16+x^14+x^13+x^12+x^9+x^8+x^7+x^4+x^2+x+1"),
            p("x^30+x^29+x^28+x^26+x^23+x^22+x^21+x^18+x^17+x^16+x^14+x^11+x^10+x^9+x^7+x^4+x^3+x^2+1"),
        ];
        expected.sort();
        assert_eq!(factor(&g).unwrap(), expected);
    }

    #[test]
    fn reducible_inputs() {
        let f1 = &p("x^3+x^2+1") * &p("x^3+x+1");
        let f2 = &p("x^4+x^3+1") * &p("x^4+x+1");
        let g = vee(&f1, &f2).unwrap();
        assert_eq!(g.deg(), 48);
        assert_eq!(exponent(&g).unwrap(), 105);
        let factors = factor(&g).unwrap();
        assert_eq!(factors.len(), 4);
        assert_eq!(product(&factors), g);
    }

    #[test]
    fn degree_one_factor_is_neutral() {
        for f in ["x^4+x+1", "x^6+x^5+x^4+x^2+1", "x^4+x^3+x^2+x+1"] {
            assert_eq!(vee(&p(f), &p("x+1")).unwrap(), p(f));
        }
    }

    #[test]
    fn precondition_errors() {
        assert_eq!(vee(&p("x^6+x^5+x^4+x^2+1"), &p("x^2+x+1")).unwrap_err(), Error::NotCoprime(21, 3));
        assert_eq!(vee(&(&p("x^2+x+1") * &p("x^3+x+1")), &p("x^4+x+1")).unwrap_err(), Error::NonUniformExponent);
    }

    #[test]
    fn methods_agree_and_degrees_multiply() {
        use crate::gf2poly::{enumerate_irreducible, ord2};
        let mut pool = Vec::new();
        for e in [3u64, 5, 7, 9, 11, 13, 15, 17, 21, 31] {
            let n = ord2(e).unwrap() as usize;
            pool.extend(enumerate_irreducible(n, e).into_iter().take(2).map(|f| (f, e)));
        }
        for (f1, r1) in &pool {
            for (f2, r2) in &pool {
                if r1.gcd(r2) != 1 || f1.deg() * f2.deg() > 40 {
                    continue;
                }
                let g = vee(f1, f2).unwrap();
                assert_eq!(g.deg(), f1.deg() * f2.deg());
                assert_eq!(exponent(&g).unwrap(), r1 * r2);
            }
        }
    }
}
