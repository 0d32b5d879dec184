use super::{ExtElem, ExtField, GfError, Poly, PrimeField};

/// Rabin's deterministic irreducibility test for a monic polynomial over `F_q`:
/// `f` of degree `s` is irreducible iff `ξ^{q^s} ≡ ξ (mod f)` and
/// `gcd(ξ^{q^d} - ξ, f) = 1` for every proper divisor `d` of `s`.
pub fn is_irreducible(field: &PrimeField, f: &Poly<u32>) -> bool {
    let Some(s) = f.degree() else {
        return false;
    };
    if s == 0 {
        return false;
    }
    if s == 1 {
        return true;
    }
    let q = field.modulus() as u64;
    let x = Poly::x(field);
    // frob[d] = ξ^{q^d} mod f
    let mut frob = Vec::with_capacity(s + 1);
    frob.push(x.rem(field, f).expect("nonzero modulus"));
    for d in 1..=s {
        let next = frob[d - 1].pow_mod(field, q, f).expect("nonzero modulus");
        frob.push(next);
    }
    let x_mod = x.rem(field, f).expect("nonzero modulus");
    if frob[s] != x_mod {
        return false;
    }
    (1..s).filter(|d| s % d == 0).all(|d| {
        let g = frob[d].sub(field, &x_mod).gcd(field, f);
        g.degree() == Some(0)
    })
}

/// Number of monic irreducible polynomials of degree `s` over `F_q`
/// (Gauss / Möbius formula). Saturates at `u128::MAX` for huge inputs.
pub fn count_irreducibles(q: u64, s: usize) -> u128 {
    fn mobius(mut n: usize) -> i32 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let mut total: i128 = 0;
    for d in (1..=s).filter(|d| s % d == 0) {
        let term = (q as i128).checked_pow((s / d) as u32);
        let Some(term) = term else {
            return u128::MAX;
        };
        total += mobius(d) as i128 * term;
    }
    (total / s as i128) as u128
}

/// The first `count` monic irreducible polynomials of degree `s` over `F_q`
/// in lexicographic order of the coefficient vector `(c_0, ..., c_{s-1})`.
pub fn find_irreducibles(
    field: &PrimeField,
    s: usize,
    count: usize,
) -> Result<Vec<Poly<u32>>, GfError> {
    let q = field.modulus() as u64;
    let available = count_irreducibles(q, s);
    if (count as u128) > available {
        return Err(GfError::Exhausted {
            degree: s,
            wanted: count,
            found: available as usize,
        });
    }
    let total = (q as u128).pow(s as u32);
    let mut found = Vec::with_capacity(count);
    // a zero constant term means ξ divides f; those come first in the scan
    let mut idx: u128 = if s >= 2 { total / q as u128 } else { 0 };
    while found.len() < count && idx < total {
        // c_0 is the most significant digit of the scan counter
        let mut coeffs = vec![0u32; s + 1];
        let mut rest = idx;
        for d in (0..s).rev() {
            coeffs[d] = (rest % q as u128) as u32;
            rest /= q as u128;
        }
        coeffs[s] = 1;
        let f = Poly::new(field, coeffs);
        if !has_linear_factor(field, &f, s) && is_irreducible(field, &f) {
            found.push(f);
        }
        idx += 1;
    }
    if found.len() < count {
        return Err(GfError::Exhausted {
            degree: s,
            wanted: count,
            found: found.len(),
        });
    }
    Ok(found)
}

fn has_linear_factor(field: &PrimeField, f: &Poly<u32>, s: usize) -> bool {
    s >= 2 && (0..field.modulus()).any(|c| f.eval(field, &c) == 0)
}

/// Minimal polynomial of `alpha` over the base field: the product of
/// `(ξ - c)` over the distinct Frobenius conjugates `c` of `alpha`.
pub fn minimal_poly(field: &ExtField, alpha: &ExtElem) -> Poly<u32> {
    let mut conjugates = vec![*alpha];
    let mut c = field.frobenius(alpha);
    while c != *alpha {
        conjugates.push(c);
        c = field.frobenius(&c);
    }
    let p = Poly::from_roots(field, &conjugates);
    field
        .lower_poly(&p)
        .expect("product over a full conjugacy class has base-field coefficients")
}

/// The root of a base-field polynomial `f` with the smallest element index,
/// provided `f` is irreducible of degree dividing `s` (so it splits in `field`).
///
/// One root is split off by equal-degree factorization with deterministic
/// shifts `ξ + c`; the rest are its Frobenius conjugates.
pub fn canonical_root(field: &ExtField, f: &Poly<u32>) -> Option<ExtElem> {
    use super::Field;
    let deg = f.degree()?;
    if deg == 0 {
        return None;
    }
    let lifted = field.lift_poly(f);
    let root = if field.characteristic() == 2 {
        // tiny fields only: scan
        field.elements().find(|x| field.is_zero(&lifted.eval(field, x)))?
    } else {
        split_off_root(field, lifted)?
    };
    if !field.is_zero(&field.eval_base_poly(f, &root)) {
        return None;
    }
    let mut best = root;
    let mut c = field.frobenius(&root);
    while c != root {
        if field.index_of(&c) < field.index_of(&best) {
            best = c;
        }
        c = field.frobenius(&c);
    }
    Some(best)
}

fn split_off_root(field: &ExtField, mut f: Poly<ExtElem>) -> Option<ExtElem> {
    use super::Field;
    let order = field.order();
    let half = (order - 1) / 2;
    let one = Poly::constant(field, field.one());
    loop {
        let lead = *f.leading()?;
        f = f.scale(field, &field.inv(&lead).ok()?);
        match f.degree()? {
            0 => return None,
            1 => return Some(field.neg(&f.coeffs()[0])),
            _ => {}
        }
        let deg = f.degree()?;
        // shifts from the base field cannot separate conjugates, so start
        // past it
        let start = field.characteristic().min(order - 1);
        let factor = (start..order).find_map(|i| {
            let shift = Poly::new(field, vec![field.from_index(i), field.one()]);
            let h = shift.pow_mod(field, half, &f).ok()?;
            let g = h.sub(field, &one).gcd(field, &f);
            let dg = g.degree()?;
            (dg > 0 && dg < deg).then_some(g)
        })?;
        let (other, _) = f.div_rem(field, &factor).ok()?;
        f = if factor.degree() <= other.degree() { factor } else { other };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    /// Reference check: no monic factor of degree 1..=s/2 divides `p`.
    fn irreducible_by_trial_division(field: &PrimeField, p: &Poly<u32>) -> bool {
        let s = p.degree().unwrap();
        let q = field.modulus() as u64;
        for d in 1..=s / 2 {
            for idx in 0..q.pow(d as u32) {
                let mut coeffs = vec![0u32; d + 1];
                let mut rest = idx;
                for c in coeffs.iter_mut().take(d) {
                    *c = (rest % q) as u32;
                    rest /= q;
                }
                coeffs[d] = 1;
                let g = Poly::new(field, coeffs);
                if p.rem(field, &g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn linear_polynomials_over_f2() {
        let f2 = f(2);
        let got = find_irreducibles(&f2, 1, 2).unwrap();
        assert_eq!(got[0].coeffs(), &[0, 1]);
        assert_eq!(got[1].coeffs(), &[1, 1]);
    }

    #[test]
    fn only_quadratic_over_f2() {
        let f2 = f(2);
        let got = find_irreducibles(&f2, 2, 1).unwrap();
        assert_eq!(got[0].coeffs(), &[1, 1, 1]);
        assert!(matches!(
            find_irreducibles(&f2, 2, 2),
            Err(GfError::Exhausted { found: 1, .. })
        ));
    }

    #[test]
    fn quadratics_over_f3_in_scan_order() {
        let f3 = f(3);
        let got: Vec<Vec<u32>> = find_irreducibles(&f3, 2, 3)
            .unwrap()
            .into_iter()
            .map(|p| p.into_coeffs())
            .collect();
        assert_eq!(got, vec![vec![1, 0, 1], vec![2, 1, 1], vec![2, 2, 1]]);
    }

    #[test]
    fn rabin_test_agrees_with_trial_division() {
        for (q, s) in [(2u64, 2usize), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
            let field = f(q);
            let mut count = 0u128;
            for idx in 0..q.pow(s as u32) {
                let mut coeffs = vec![0u32; s + 1];
                let mut rest = idx;
                for c in coeffs.iter_mut().take(s) {
                    *c = (rest % q) as u32;
                    rest /= q;
                }
                coeffs[s] = 1;
                let p = Poly::new(&field, coeffs);
                let fast = is_irreducible(&field, &p);
                assert_eq!(fast, irreducible_by_trial_division(&field, &p), "q={q} s={s} {p:?}");
                count += fast as u128;
            }
            assert_eq!(count, count_irreducibles(q, s), "q={q} s={s}");
        }
    }

    #[test]
    fn counts_match_known_values() {
        assert_eq!(count_irreducibles(2, 1), 2);
        assert_eq!(count_irreducibles(2, 4), 3);
        assert_eq!(count_irreducibles(7, 2), 21);
        assert_eq!(count_irreducibles(2, 8), 30);
    }

    #[test]
    fn minimal_poly_of_base_element_is_linear() {
        let f7 = f(7);
        let ext = ExtField::new(f7, &Poly::new(&f7, vec![1, 0, 1])).unwrap();
        let p = minimal_poly(&ext, &ext.embed(3));
        assert_eq!(p.coeffs(), &[4, 1]);
    }

    #[test]
    fn minimal_poly_of_omega_in_gf4() {
        let f2 = f(2);
        let ext = ExtField::new(f2, &Poly::new(&f2, vec![1, 1, 1])).unwrap();
        assert_eq!(minimal_poly(&ext, &ext.generator()).coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn minimal_poly_of_root_of_x2_plus_1_over_f3() {
        let f3 = f(3);
        let ext = ExtField::new(f3, &Poly::new(&f3, vec![1, 0, 1])).unwrap();
        assert_eq!(minimal_poly(&ext, &ext.generator()).coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn minimal_polys_vanish_and_have_dividing_degree() {
        let f3 = f(3);
        let modulus = find_irreducibles(&f3, 4, 1).unwrap().remove(0);
        let ext = ExtField::new(f3, &modulus).unwrap();
        for x in ext.elements() {
            let p = minimal_poly(&ext, &x);
            let d = p.degree().unwrap();
            assert_eq!(4 % d, 0);
            assert!(ext.is_zero(&ext.eval_base_poly(&p, &x)));
            assert!(is_irreducible(&f3, &p));
        }
    }

    #[test]
    fn canonical_root_matches_scan() {
        for (q, s) in [(3u64, 2usize), (5, 3), (7, 2), (3, 4)] {
            let base = f(q);
            let n = count_irreducibles(q, s).min(6) as usize;
            let polys = find_irreducibles(&base, s, n).unwrap();
            let ext = ExtField::new(base, &polys[0]).unwrap();
            for p in &polys {
                let scan = ext.elements().find(|x| ext.is_zero(&ext.eval_base_poly(p, x)));
                assert_eq!(canonical_root(&ext, p), scan, "q={q} s={s} {p:?}");
            }
        }
    }
}
