use num_prime::nt_funcs::factorize64;

use super::BinaryPolynomial;
use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};

/// Rabin's test: `x^(2^n) = x mod f` and `gcd(x^(2^(n/p)) - x, f) = 1` for
/// every prime `p | n`.
pub fn is_irreducible(f: &BinaryPolynomial) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let x = BinaryPolynomial::x();
    if BinaryPolynomial::x_pow_two_pow_mod(n, f)? != x.rem(f)? {
        return Ok(false);
    }
    for p in factorize64(n as u64).keys() {
        let h = &BinaryPolynomial::x_pow_two_pow_mod(n / *p as usize, f)? + &x;
        if !h.gcd(f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_squarefree(f: &BinaryPolynomial) -> bool {
    if f.is_constant() {
        return !f.is_zero();
    }
    let d = f.derivative();
    !d.is_zero() && f.gcd(&d).is_ok_and(|g| g.is_one())
}

/// Square-free decomposition: pairs `(g, m)` with `f = Π g^m`, each `g`
/// square-free and the `g` pairwise coprime.
fn squarefree_decomposition(f: &BinaryPolynomial) -> Vec<(BinaryPolynomial, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        // f is a perfect square.
        for (g, m) in squarefree_decomposition(&f.sqrt_even()) {
            out.push((g, 2 * m));
        }
        return out;
    }
    let mut c = f.gcd(&d).expect("nonzero");
    let mut w = f.divmod(&c).expect("nonzero").0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c).expect("nonzero");
        let fac = w.divmod(&y).expect("nonzero").0;
        if !fac.is_one() {
            out.push((fac, i));
        }
        i += 1;
        w = y.clone();
        c = c.divmod(&y).expect("nonzero").0;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.sqrt_even()) {
            out.push((g, 2 * m));
        }
    }
    out
}

/// Berlekamp splitting of a square-free polynomial of positive degree.
pub(super) fn berlekamp_split(f: &BinaryPolynomial) -> Vec<BinaryPolynomial> {
    let d = f.deg();
    if d <= 1 {
        return vec![f.clone()];
    }
    // Row i of Q holds x^(2i) mod f; the fixed space of Frobenius is the
    // left null space of Q - I.
    let mut q = BitMatrix::zeros(d, d);
    let mut r = BinaryPolynomial::one();
    for i in 0..d {
        for k in r.powers() {
            q.set(i, k, true);
        }
        r = r.shl(2).rem(f).expect("nonzero modulus");
    }
    let kernel = q.add(&BitMatrix::identity(d)).transpose().nullspace();
    let count = kernel.len();
    if count == 1 {
        return vec![f.clone()];
    }
    let one = BinaryPolynomial::one();
    let mut factors = vec![f.clone()];
    for v in &kernel {
        let g = BinaryPolynomial::from_coeffs(v.iter().copied());
        if g.is_constant() {
            continue;
        }
        let g1 = &g + &one;
        let mut next = Vec::with_capacity(factors.len() * 2);
        for h in factors {
            if h.deg() <= 1 {
                next.push(h);
                continue;
            }
            let a = h.gcd(&g).expect("nonzero");
            let b = h.gcd(&g1).expect("nonzero");
            if a.is_constant() || b.is_constant() {
                next.push(h);
            } else {
                next.push(a);
                next.push(b);
            }
        }
        factors = next;
        if factors.len() == count {
            break;
        }
    }
    debug_assert_eq!(factors.len(), count);
    factors
}

/// Complete factorization into irreducible factors, repeated according to
/// multiplicity and sorted.
pub fn factor(f: &BinaryPolynomial) -> Result<Vec<BinaryPolynomial>> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for h in berlekamp_split(&g) {
            out.extend(std::iter::repeat_n(h, m));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::product;
    use proptest::prelude::*;

    fn p(s: &str) -> BinaryPolynomial {
        s.parse().unwrap()
    }

    /// Irreducibility by trial division over every polynomial of degree at
    /// most half of `f`'s degree.
    fn irreducible_by_trial_division(f: &BinaryPolynomial) -> bool {
        let n = f.deg();
        for d in 1..=n / 2 {
            for bits in (1u64 << d)..(1u64 << (d + 1)) {
                if BinaryPolynomial::from_u64(bits).divides(f) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p("x^6+x^5+x^4+x^2+1")).unwrap());
        assert!(!is_irreducible(&p("x^6+x^5+x^4+x^3+x^2+x+1")).unwrap());
        assert!(is_irreducible(&p("x^2+x+1")).unwrap());
        assert!(is_irreducible(&p("x")).unwrap());
        assert_eq!(is_irreducible(&p("1")), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(&p("x^24+x^21+x^15+x^12+x^9+x^3+1")).unwrap(), vec![p("x^12+x^3+1"), p("x^12+x^9+1")]);
        let big = p("x^48+x^47+x^46+x^43+x^42+x^40+x^39+x^36+x^35+x^34+x^33+x^32+x^31+x^28\
                     +x^26+x^24+x^22+x^20+x^17+x^16+x^15+x^14+x^13+x^12+x^9+x^8+x^6+x^5+x^2+x+1");
        let mut expected = vec![
            p("x^12+x^8+x^6+x^5+x^3+x^2+1"),
            p("x^12+x^9+x^5+x^4+x^3+x+1"),
            p("x^12+x^10+x^9+x^7+x^6+x^4+1"),
            p("x^12+x^11+x^9+x^8+x^7+x^3+1"),
        ];
        expected.sort();
        assert_eq!(factor(&big).unwrap(), expected);
        let f = p("x^12+x^10+x^9+x+1");
        assert_eq!(factor(&f).unwrap(), vec![f]);
    }

    #[test]
    fn factor_handles_repeated_factors() {
        let a = p("x^3+x+1");
        let b = p("x^2+x+1");
        let f = product([&a, &a, &a, &b, &b, &p("x"), &p("x+1")]);
        let mut expected = vec![a.clone(), a.clone(), a, b.clone(), b, p("x"), p("x+1")];
        expected.sort();
        assert_eq!(factor(&f).unwrap(), expected);
        assert!(!is_squarefree(&f));
    }

    #[test]
    fn irreducibility_agrees_with_factor_up_to_degree_12() {
        for bits in 2u64..(1 << 13) {
            let f = BinaryPolynomial::from_u64(bits);
            let irr = is_irreducible(&f).unwrap();
            assert_eq!(irr, factor(&f).unwrap().len() == 1, "{f}");
            if f.deg() <= 10 {
                assert_eq!(irr, irreducible_by_trial_division(&f), "{f}");
            }
        }
    }

    proptest! {
        #[test]
        fn factor_multiplies_back(bits in 2u64..(1 << 25)) {
            let f = BinaryPolynomial::from_u64(bits);
            let factors = factor(&f).unwrap();
            prop_assert_eq!(product(&factors), f);
            for g in &factors {
                prop_assert!(is_irreducible(g).unwrap());
            }
        }
    }
}
