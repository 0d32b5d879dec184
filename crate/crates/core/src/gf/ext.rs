use std::fmt;

use super::{is_irreducible, parse_coeffs, Field, GfError, Poly, PrimeField};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Element of `F_{q^s}`: coordinates over `F_q` in the power basis of the
/// construction modulus, lowest degree first. Coordinates past `len` are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem {
    coords: [u32; MAX_DEGREE],
    len: u8,
}

impl ExtElem {
    pub fn coords(&self) -> &[u32] {
        &self.coords[..self.len as usize]
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// The extension `F_{q^s} = F_q[ξ]/(modulus)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: PrimeField,
    s: usize,
    /// Monic modulus coefficients `c_0..c_s`, `c_s = 1`.
    modulus: [u32; MAX_DEGREE + 1],
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description())
    }
}

impl ExtField {
    /// Build the extension from a monic irreducible modulus over `base`.
    pub fn new(base: PrimeField, modulus: &Poly<u32>) -> Result<Self, GfError> {
        let s = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| GfError::InvalidModulus("degree must be at least 1".into()))?;
        if s > MAX_DEGREE {
            return Err(GfError::InvalidModulus(format!(
                "degree {s} exceeds {MAX_DEGREE}"
            )));
        }
        if !modulus.is_monic(&base) {
            return Err(GfError::InvalidModulus("modulus is not monic".into()));
        }
        if modulus.coeffs().iter().any(|&c| c >= base.modulus()) {
            return Err(GfError::InvalidModulus(
                "coefficient outside the base field".into(),
            ));
        }
        if (base.modulus() as u128).pow(s as u32) > 1u128 << 32 {
            return Err(GfError::FieldTooLarge);
        }
        if !is_irreducible(&base, modulus) {
            return Err(GfError::InvalidModulus(format!(
                "{} is reducible over F_{}",
                modulus.format(&base),
                base.modulus()
            )));
        }
        let mut m = [0u32; MAX_DEGREE + 1];
        m[..=s].copy_from_slice(modulus.coeffs());
        Ok(Self {
            base,
            s,
            modulus: m,
        })
    }

    /// `F_q` viewed as a degree-1 extension with modulus `ξ`.
    pub fn trivial(base: PrimeField) -> Self {
        let mut m = [0u32; MAX_DEGREE + 1];
        m[1] = 1;
        Self {
            base,
            s: 1,
            modulus: m,
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.s
    }

    pub fn modulus(&self) -> Poly<u32> {
        Poly::new(&self.base, self.modulus[..=self.s].to_vec())
    }

    /// `q=<prime>;s=<deg>;mod=<c0:c1:...:1>`.
    pub fn description(&self) -> String {
        format!(
            "q={};s={};mod={}",
            self.base.modulus(),
            self.s,
            self.modulus().format(&self.base)
        )
    }

    pub fn from_description(desc: &str) -> Result<Self, GfError> {
        let bad = || GfError::Parse {
            what: "field description",
            input: desc.to_string(),
        };
        let mut q = None;
        let mut s = None;
        let mut modulus = None;
        for part in desc.split(';') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "q" => q = Some(value.trim().parse::<u64>().map_err(|_| bad())?),
                "s" => s = Some(value.trim().parse::<usize>().map_err(|_| bad())?),
                "mod" => modulus = Some(parse_coeffs(value, "field modulus")?),
                _ => return Err(bad()),
            }
        }
        let (q, s, modulus) = (q.ok_or_else(bad)?, s.ok_or_else(bad)?, modulus.ok_or_else(bad)?);
        let base = PrimeField::new(q)?;
        let coeffs = modulus
            .into_iter()
            .map(|c| base.elem(c))
            .collect::<Result<Vec<_>, _>>()?;
        let poly = Poly::new(&base, coeffs);
        if poly.degree() != Some(s) {
            return Err(GfError::InvalidModulus(format!(
                "declared degree {s} does not match modulus"
            )));
        }
        Self::new(base, &poly)
    }

    /// Element from its coordinate vector (must have exactly `s` entries in range).
    pub fn elem(&self, coords: &[u32]) -> Result<ExtElem, GfError> {
        if coords.len() != self.s {
            return Err(GfError::FieldMismatch(format!(
                "expected {} coordinates, got {}",
                self.s,
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= self.base.modulus()) {
            return Err(GfError::FieldMismatch(format!(
                "coordinate {c} outside F_{}",
                self.base.modulus()
            )));
        }
        let mut out = self.zero();
        out.coords[..self.s].copy_from_slice(coords);
        Ok(out)
    }

    pub fn parse_elem(&self, s: &str) -> Result<ExtElem, GfError> {
        let coords = parse_coeffs(s, "extension element")?;
        let coords: Vec<u32> = coords
            .into_iter()
            .map(|c| u32::try_from(c).unwrap_or(u32::MAX))
            .collect();
        self.elem(&coords)
    }

    /// Check that `x` belongs to this field.
    pub fn validate(&self, x: &ExtElem) -> Result<(), GfError> {
        self.elem(x.coords()).map(|_| ())
    }

    pub fn checked_add(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem, GfError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem, GfError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul(a, b))
    }

    /// Embed a base-field element.
    pub fn embed(&self, c: u32) -> ExtElem {
        let mut out = self.zero();
        out.coords[0] = c;
        out
    }

    /// Base-field value of `x` when `x ∈ F_q`.
    pub fn to_base(&self, x: &ExtElem) -> Option<u32> {
        x.coords()[1..].iter().all(|&c| c == 0).then_some(x.coords[0])
    }

    pub fn in_base(&self, x: &ExtElem) -> bool {
        self.to_base(x).is_some()
    }

    /// The class of `ξ` (the root of the construction modulus).
    pub fn generator(&self) -> ExtElem {
        if self.s == 1 {
            return self.embed(self.base.neg(&self.modulus[0]));
        }
        let mut out = self.zero();
        out.coords[1] = 1;
        out
    }

    /// `x^q`.
    pub fn frobenius(&self, x: &ExtElem) -> ExtElem {
        self.pow(x, self.base.modulus() as u64)
    }

    /// `Tr(x) = Σ_{i<s} x^{q^i}`; errors if the sum is not in `F_q`.
    pub fn try_trace(&self, x: &ExtElem) -> Result<u32, GfError> {
        let mut acc = *x;
        let mut conj = *x;
        for _ in 1..self.s {
            conj = self.frobenius(&conj);
            acc = self.add(&acc, &conj);
        }
        match acc.coords()[1..].iter().position(|&c| c != 0) {
            Some(pos) => Err(GfError::TraceOutsideBase(pos + 1)),
            None => Ok(acc.coords[0]),
        }
    }

    /// Trace to the base field. The modulus is verified irreducible at
    /// construction, so the sum always lands in `F_q`.
    pub fn trace(&self, x: &ExtElem) -> u32 {
        self.try_trace(x).expect("trace of an irreducible extension")
    }

    /// Evaluate a base-field polynomial at an extension point.
    pub fn eval_base_poly(&self, p: &Poly<u32>, x: &ExtElem) -> ExtElem {
        p.coeffs().iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, x), &self.embed(*c))
        })
    }

    /// Lift a base-field polynomial coefficient-wise.
    pub fn lift_poly(&self, p: &Poly<u32>) -> Poly<ExtElem> {
        Poly::new(self, p.coeffs().iter().map(|c| self.embed(*c)).collect())
    }

    /// Project an extension polynomial with base-field coefficients back down.
    pub fn lower_poly(&self, p: &Poly<ExtElem>) -> Option<Poly<u32>> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| self.to_base(c))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::new(&self.base, coeffs))
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem {
            coords: [0; MAX_DEGREE],
            len: self.s as u8,
        }
    }

    fn one(&self) -> ExtElem {
        self.embed(1)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        debug_assert_eq!(a.len as usize, self.s);
        debug_assert_eq!(b.len as usize, self.s);
        let mut out = self.zero();
        for i in 0..self.s {
            out.coords[i] = self.base.add(&a.coords[i], &b.coords[i]);
        }
        out
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut out = self.zero();
        for i in 0..self.s {
            out.coords[i] = self.base.sub(&a.coords[i], &b.coords[i]);
        }
        out
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let mut out = self.zero();
        for i in 0..self.s {
            out.coords[i] = self.base.neg(&a.coords[i]);
        }
        out
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        debug_assert_eq!(a.len as usize, self.s);
        debug_assert_eq!(b.len as usize, self.s);
        let s = self.s;
        let q = self.base.modulus() as u64;
        if s == 1 {
            return self.embed(self.base.mul(&a.coords[0], &b.coords[0]));
        }
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..s {
            let ai = a.coords[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..s {
                prod[i + j] = (prod[i + j] + ai * b.coords[j] as u64) % q;
            }
        }
        // ξ^s = -Σ_{k<s} c_k ξ^k
        for d in (s..=2 * s - 2).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for k in 0..s {
                let m = self.modulus[k] as u64;
                if m != 0 {
                    prod[d - s + k] = (prod[d - s + k] + c * (q - m)) % q;
                }
            }
        }
        let mut out = self.zero();
        for i in 0..s {
            out.coords[i] = prod[i] as u32;
        }
        out
    }

    fn inv(&self, a: &ExtElem) -> Result<ExtElem, GfError> {
        if self.is_zero(a) {
            return Err(GfError::DivisionByZero);
        }
        if self.s == 1 {
            return Ok(self.embed(self.base.inv(&a.coords[0])?));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.coords().iter().all(|&c| c == 0)
    }

    fn from_int(&self, n: u64) -> ExtElem {
        self.embed(self.base.reduce(n))
    }

    fn order(&self) -> u64 {
        (self.base.modulus() as u64).pow(self.s as u32)
    }

    fn characteristic(&self) -> u64 {
        self.base.modulus() as u64
    }

    fn from_index(&self, mut idx: u64) -> ExtElem {
        debug_assert!(idx < self.order());
        let q = self.base.modulus() as u64;
        let mut out = self.zero();
        for i in 0..self.s {
            out.coords[i] = (idx % q) as u32;
            idx /= q;
        }
        out
    }

    fn index_of(&self, a: &ExtElem) -> u64 {
        let q = self.base.modulus() as u64;
        a.coords()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * q + c as u64)
    }

    fn format_elem(&self, a: &ExtElem) -> String {
        a.coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(":")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> ExtField {
        let f2 = PrimeField::new(2).unwrap();
        ExtField::new(f2, &Poly::new(&f2, vec![1, 1, 1])).unwrap()
    }

    fn gf49() -> ExtField {
        let f7 = PrimeField::new(7).unwrap();
        // ξ^2 + 1 is irreducible over F_7 (7 ≡ 3 mod 4)
        ExtField::new(f7, &Poly::new(&f7, vec![1, 0, 1])).unwrap()
    }

    #[test]
    fn trace_of_zero_and_one_in_gf4() {
        let f = gf4();
        assert_eq!(f.trace(&f.zero()), 0);
        assert_eq!(f.trace(&f.one()), 0);
    }

    #[test]
    fn trace_of_omega_in_gf4_is_one() {
        let f = gf4();
        assert_eq!(f.trace(&f.generator()), 1);
    }

    #[test]
    fn trace_is_identity_when_s_is_one() {
        let f7 = PrimeField::new(7).unwrap();
        let f = ExtField::trivial(f7);
        for x in 0..7 {
            assert_eq!(f.trace(&f.embed(x)), x);
        }
    }

    #[test]
    fn degree_one_extension_agrees_with_prime_field() {
        let f7 = PrimeField::new(7).unwrap();
        let f = ExtField::new(f7, &Poly::new(&f7, vec![3, 1])).unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                let (ea, eb) = (f.embed(a), f.embed(b));
                assert_eq!(f.to_base(&f.mul(&ea, &eb)), Some(f7.mul(&a, &b)));
                assert_eq!(f.to_base(&f.add(&ea, &eb)), Some(f7.add(&a, &b)));
            }
        }
        // root of ξ + 3 is -3 = 4
        assert_eq!(f.to_base(&f.generator()), Some(4));
    }

    #[test]
    fn rejects_reducible_and_non_monic_moduli() {
        let f7 = PrimeField::new(7).unwrap();
        // ξ^2 - 1 = (ξ-1)(ξ+1)
        assert!(matches!(
            ExtField::new(f7, &Poly::new(&f7, vec![6, 0, 1])),
            Err(GfError::InvalidModulus(_))
        ));
        assert!(matches!(
            ExtField::new(f7, &Poly::new(&f7, vec![1, 0, 2])),
            Err(GfError::InvalidModulus(_))
        ));
    }

    #[test]
    fn every_nonzero_element_has_an_inverse() {
        let f = gf49();
        for x in f.elements().skip(1) {
            let inv = f.inv(&x).unwrap();
            assert_eq!(f.mul(&x, &inv), f.one());
        }
        assert_eq!(f.inv(&f.zero()), Err(GfError::DivisionByZero));
    }

    #[test]
    fn index_round_trip() {
        let f = gf49();
        for i in 0..f.order() {
            assert_eq!(f.index_of(&f.from_index(i)), i);
        }
    }

    #[test]
    fn description_round_trip() {
        let f = gf49();
        assert_eq!(f.description(), "q=7;s=2;mod=1:0:1");
        assert_eq!(ExtField::from_description("q=7;s=2;mod=1:0:1").unwrap(), f);
        assert!(ExtField::from_description("q=7;s=3;mod=1:0:1").is_err());
        assert!(ExtField::from_description("q=7;mod=1:0:1").is_err());
    }

    #[test]
    fn element_parsing_checks_membership() {
        let f = gf49();
        let x = f.parse_elem("3:5").unwrap();
        assert_eq!(f.format_elem(&x), "3:5");
        assert!(f.parse_elem("3").is_err());
        assert!(f.parse_elem("3:7").is_err());
        let small = ExtField::trivial(PrimeField::new(7).unwrap()).embed(2);
        assert!(matches!(
            f.checked_add(&x, &small),
            Err(GfError::FieldMismatch(_))
        ));
    }

    #[test]
    fn trace_lands_in_base_field_for_every_element() {
        let f = gf49();
        let q = 7u64;
        for x in f.elements() {
            let t = f.trace(&x);
            let te = f.embed(t);
            assert_eq!(f.pow(&te, q), te);
        }
    }

    #[test]
    fn broken_modulus_is_detected_by_trace() {
        // bypass the constructor check with a reducible modulus
        let f7 = PrimeField::new(7).unwrap();
        let mut m = [0u32; MAX_DEGREE + 1];
        m[0] = 6;
        m[2] = 1;
        let broken = ExtField { base: f7, s: 2, modulus: m };
        let found = broken.elements().any(|x| broken.try_trace(&x).is_err());
        assert!(found);
    }
}
