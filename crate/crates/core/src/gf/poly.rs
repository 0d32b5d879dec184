use super::{Field, GfError};

/// Dense univariate polynomial, lowest degree first.
///
/// Always normalized: no trailing zero coefficients, so the zero polynomial
/// has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Copy + Eq> Poly<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `ξ`.
    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self {
            coeffs: vec![field.zero(), field.one()],
        }
    }

    /// `∏ (ξ - root)`.
    pub fn from_roots<F: Field<Elem = E>>(field: &F, roots: &[E]) -> Self {
        roots.iter().fold(Self::constant(field, field.one()), |acc, r| {
            acc.mul(field, &Self::new(field, vec![field.neg(r), field.one()]))
        })
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Coefficient of `ξ^i` (zero beyond the degree).
    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).copied().unwrap_or_else(|| field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.leading() == Some(&field.one())
    }

    /// Horner evaluation.
    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::new(field, coeffs)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::new(field, coeffs)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::new(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    /// Schoolbook product.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, out)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem<F: Field<Elem = E>>(
        &self,
        field: &F,
        divisor: &Self,
    ) -> Result<(Self, Self), GfError> {
        let d = divisor.degree().ok_or(GfError::DivisionByZero)?;
        let lead_inv = field.inv(divisor.leading().expect("nonzero divisor"))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = field.mul(&rem[i + d], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            quot[i] = c;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = field.sub(&rem[i + j], &field.mul(&c, dc));
            }
        }
        rem.truncate(d);
        Ok((Self::new(field, quot), Self::new(field, rem)))
    }

    /// Remainder modulo `divisor`.
    pub fn rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Result<Self, GfError> {
        Ok(self.div_rem(field, divisor)?.1)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod<F: Field<Elem = E>>(
        &self,
        field: &F,
        mut e: u64,
        modulus: &Self,
    ) -> Result<Self, GfError> {
        let mut base = self.rem(field, modulus)?;
        let mut acc = Self::constant(field, field.one()).rem(field, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus)?;
            }
            base = base.mul(field, &base).rem(field, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => {
                let inv = field.inv(l).expect("nonzero leading coefficient");
                a.scale(field, &inv)
            }
            None => a,
        }
    }

    /// Colon-joined coefficients, lowest degree first, using the field's
    /// element format for each coefficient. The zero polynomial is `"0"`.
    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| field.format_elem(c))
            .collect::<Vec<_>>()
            .join(":")
    }
}
