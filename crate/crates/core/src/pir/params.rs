use serde::{Deserialize, Serialize};

use super::PirError;
use crate::gf::{
    canonical_root, count_irreducibles, dual_basis, find_irreducibles, is_prime, linalg, minimal_poly, next_prime,
    power_basis, DualBasisPair, ExtElem, ExtField, Field, Poly, PrimeField, MAX_DEGREE,
};
use crate::rscodes::{dual_multipliers, lagrange_weights, GrsCode};

/// Integer inputs to [`SchemeParams::setup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupRequest {
    /// Number of servers.
    pub k: usize,
    /// Collusion bound.
    pub t: usize,
    /// Byzantine bound.
    pub b: usize,
    /// Retrieval threshold.
    pub r: usize,
    /// Number of files.
    pub m: usize,
    /// Optional prime override for the base field.
    pub q: Option<u64>,
}

impl SetupRequest {
    pub fn new(k: usize, t: usize, b: usize, r: usize, m: usize) -> Self {
        Self { k, t, b, r, m, q: None }
    }

    pub fn with_q(mut self, q: u64) -> Self {
        self.q = Some(q);
        self
    }
}

/// Public parameters of a scheme instance plus client-side precomputation.
///
/// Immutable after construction and safe to share between sessions.
#[derive(Debug, Clone)]
pub struct SchemeParams {
    pub k: usize,
    pub t: usize,
    pub b: usize,
    pub r: usize,
    /// Sub-packetization: extension symbols per file.
    pub delta: usize,
    pub s: usize,
    pub m: usize,
    base: PrimeField,
    ext: ExtField,
    omega_alpha: Vec<ExtElem>,
    omega_chi: Vec<ExtElem>,
    omega_beta: Vec<u32>,
    min_polys: Vec<Poly<u32>>,
    u: Vec<ExtElem>,
    v: Vec<ExtElem>,
    dual_pair: DualBasisPair,
    /// `recovery_polys[i][δ] = h_{iδ}`, degree `< s`.
    recovery_polys: Vec<Vec<Poly<u32>>>,
    beta_ext: Vec<ExtElem>,
    /// `indicator_weights[j][a] = L_a(β_j)` over the nodes `Ω_α ∪ Ω_χ`.
    indicator_weights: Vec<Vec<ExtElem>>,
    /// `blind_weights[j][h] = M_h(β_j)`.
    blind_weights: Vec<Vec<ExtElem>>,
    /// `P(β_j) = ∏_ℓ f̃_ℓ(β_j)`.
    locator_at_beta: Vec<u32>,
    /// `recovery_coeffs[i][δ][j] = h_{iδ}(β_j) ∏_{ℓ≠i} f̃_ℓ(β_j)`.
    recovery_coeffs: Vec<Vec<Vec<u32>>>,
    /// Base-field GRS code cut out by `Σ_j β_j^e c_j = 0`, `e < 2b`.
    check_code: GrsCode<PrimeField>,
}

/// Sub-packetization and extension degree implied by `(k, t, b, r)`,
/// or the first violated constraint.
pub(crate) fn derive_shape(k: usize, t: usize, b: usize, r: usize) -> Result<(usize, usize), PirError> {
    let invalid = |msg: String| Err(PirError::InvalidParameters(msg));
    if t < 1 {
        return invalid("t >= 1 violated".into());
    }
    if r < 2 * b + t + 1 {
        return invalid(format!("t < r−2b violated (t={t}, r−2b={})", r as i64 - 2 * b as i64));
    }
    if k < 2 * b + t + 1 {
        return invalid(format!("2b + t < k violated (2b+t={}, k={k})", 2 * b + t));
    }
    let delta = r - 2 * b - t;
    let n = k - 2 * b - t;
    if n % delta != 0 {
        return invalid(format!("Δ ∤ (k−2b−t) (Δ={delta}, k−2b−t={n})"));
    }
    // implied by divisibility, kept as a guard
    if r > k {
        return invalid(format!("r ≤ k violated (r={r}, k={k})"));
    }
    let s = n / delta;
    if s > MAX_DEGREE {
        return invalid(format!("extension degree s={s} exceeds {MAX_DEGREE}"));
    }
    Ok((delta, s))
}

fn minimum_q(k: usize, t: usize, delta: usize, s: usize) -> u64 {
    if s == 1 {
        (k + delta + t) as u64
    } else {
        k as u64
    }
}

fn q_is_admissible(q: u64, s: usize, min_q: u64, roots_needed: usize) -> Result<(), String> {
    if !is_prime(q) {
        return Err(format!("q={q} is not prime"));
    }
    if q < min_q {
        return Err(format!("q ≥ {min_q} violated (q={q})"));
    }
    if (q as u128).pow(s as u32) > 1u128 << 32 {
        return Err(format!("q^s ≤ 2^32 violated (q={q}, s={s})"));
    }
    if s >= 2 && count_irreducibles(q, s) < roots_needed as u128 {
        return Err(format!(
            "F_{q} has fewer than {roots_needed} monic irreducible polynomials of degree {s}"
        ));
    }
    Ok(())
}

impl SchemeParams {
    /// Deterministic construction of all public sets and constants.
    pub fn setup(req: &SetupRequest) -> Result<Self, PirError> {
        let SetupRequest { k, t, b, r, m, q } = *req;
        let (delta, s) = derive_shape(k, t, b, r)?;
        if m < 1 {
            return Err(PirError::InvalidParameters("m ≥ 1 violated".into()));
        }
        let min_q = minimum_q(k, t, delta, s);
        let roots_needed = delta + t;
        let q = match q {
            Some(q) => {
                q_is_admissible(q, s, min_q, roots_needed).map_err(PirError::InvalidParameters)?;
                q
            }
            None => {
                let mut p = next_prime(min_q);
                loop {
                    match q_is_admissible(p, s, min_q, roots_needed) {
                        Ok(()) => break p,
                        Err(_) if (p as u128).pow(s as u32) <= 1u128 << 32 => p = next_prime(p + 1),
                        Err(e) => return Err(PirError::InvalidParameters(e)),
                    }
                }
            }
        };
        let base = PrimeField::new(q)?;

        let (ext, omega_alpha, omega_chi, min_polys) = if s == 1 {
            let ext = ExtField::trivial(base);
            let chi: Vec<ExtElem> = (k..k + t).map(|c| ext.embed(c as u32)).collect();
            let alpha: Vec<ExtElem> = (k + t..k + t + delta).map(|c| ext.embed(c as u32)).collect();
            let polys = alpha.iter().map(|a| minimal_poly(&ext, a)).collect();
            (ext, alpha, chi, polys)
        } else {
            let irreducibles = find_irreducibles(&base, s, delta + t)?;
            let ext = ExtField::new(base, &irreducibles[0])?;
            let roots = irreducibles
                .iter()
                .map(|f| {
                    canonical_root(&ext, f)
                        .ok_or_else(|| PirError::Internal(format!("no root of {} found", f.format(&base))))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let polys: Vec<Poly<u32>> = irreducibles[..delta].to_vec();
            (ext, roots[..delta].to_vec(), roots[delta..].to_vec(), polys)
        };
        let omega_beta: Vec<u32> = (0..k as u32).collect();
        let beta_ext: Vec<ExtElem> = omega_beta.iter().map(|b| ext.embed(*b)).collect();

        for (a, f) in omega_alpha.iter().zip(&min_polys) {
            if minimal_poly(&ext, a) != *f {
                return Err(PirError::Internal("α is not a root of its minimal polynomial".into()));
            }
        }

        let (u, v) = dual_multipliers(&ext, &omega_alpha, &beta_ext)?;
        // the χ points must be disjoint from α and β as well
        let all: Vec<ExtElem> = omega_alpha
            .iter()
            .chain(&omega_chi)
            .chain(&beta_ext)
            .copied()
            .collect();
        dual_multipliers(&ext, &[], &all)?;

        let dual_pair = dual_basis(&ext, &power_basis(&ext))?;
        let recovery_polys = (0..delta)
            .map(|i| recovery_polys_for(&ext, i, &omega_alpha, &min_polys, &u, &dual_pair))
            .collect::<Result<Vec<_>, _>>()?;

        let nodes: Vec<ExtElem> = omega_alpha.iter().chain(&omega_chi).copied().collect();
        let mut indicator_weights = Vec::with_capacity(k);
        let mut blind_weights = Vec::with_capacity(k);
        for beta in &beta_ext {
            let w = lagrange_weights(&ext, &nodes, beta)?;
            indicator_weights.push(w[..delta].to_vec());
            blind_weights.push(w[delta..].to_vec());
        }

        let locator_at_beta: Vec<u32> = omega_beta
            .iter()
            .map(|bj| base.product(min_polys.iter().map(|f| f.eval(&base, bj)).collect::<Vec<_>>().iter()))
            .collect();
        if locator_at_beta.contains(&0) {
            return Err(PirError::Internal("∏ f̃_ℓ(β_j) vanishes".into()));
        }

        let recovery_coeffs = (0..delta)
            .map(|i| {
                (0..s)
                    .map(|d| {
                        omega_beta
                            .iter()
                            .map(|bj| {
                                let others = min_polys
                                    .iter()
                                    .enumerate()
                                    .filter(|&(l, _)| l != i)
                                    .fold(1u32, |acc, (_, f)| base.mul(&acc, &f.eval(&base, bj)));
                                base.mul(&recovery_polys[i][d].eval(&base, bj), &others)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let (_, check_multipliers) = dual_multipliers(&base, &[], &omega_beta)?;
        let check_code = GrsCode::new(base, omega_beta.clone(), check_multipliers, k - 2 * b)?;

        Ok(Self {
            k,
            t,
            b,
            r,
            delta,
            s,
            m,
            base,
            ext,
            omega_alpha,
            omega_chi,
            omega_beta,
            min_polys,
            u,
            v,
            dual_pair,
            recovery_polys,
            beta_ext,
            indicator_weights,
            blind_weights,
            locator_at_beta,
            recovery_coeffs,
            check_code,
        })
    }

    /// Same public parameters with a different file count.
    pub fn with_files(&self, m: usize) -> Result<Self, PirError> {
        if m < 1 {
            return Err(PirError::InvalidParameters("m ≥ 1 violated".into()));
        }
        let mut p = self.clone();
        p.m = m;
        Ok(p)
    }

    pub fn request(&self) -> SetupRequest {
        SetupRequest {
            k: self.k,
            t: self.t,
            b: self.b,
            r: self.r,
            m: self.m,
            q: Some(self.q()),
        }
    }

    pub fn q(&self) -> u64 {
        self.base.modulus() as u64
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn omega_alpha(&self) -> &[ExtElem] {
        &self.omega_alpha
    }

    pub fn omega_chi(&self) -> &[ExtElem] {
        &self.omega_chi
    }

    pub fn omega_beta(&self) -> &[u32] {
        &self.omega_beta
    }

    /// `β_j` embedded in the extension, zero-based `j`.
    pub fn beta_ext(&self) -> &[ExtElem] {
        &self.beta_ext
    }

    pub fn min_polys(&self) -> &[Poly<u32>] {
        &self.min_polys
    }

    pub fn u(&self) -> &[ExtElem] {
        &self.u
    }

    pub fn v(&self) -> &[ExtElem] {
        &self.v
    }

    pub fn dual_pair(&self) -> &DualBasisPair {
        &self.dual_pair
    }

    pub fn recovery_polys(&self) -> &[Vec<Poly<u32>>] {
        &self.recovery_polys
    }

    pub(crate) fn indicator_weights(&self) -> &[Vec<ExtElem>] {
        &self.indicator_weights
    }

    pub(crate) fn blind_weights(&self) -> &[Vec<ExtElem>] {
        &self.blind_weights
    }

    pub(crate) fn locator_at_beta(&self) -> &[u32] {
        &self.locator_at_beta
    }

    pub(crate) fn recovery_coeffs(&self) -> &[Vec<Vec<u32>>] {
        &self.recovery_coeffs
    }

    pub fn check_code(&self) -> &GrsCode<PrimeField> {
        &self.check_code
    }

    /// `h̃_e(ξ) = ξ^e ∏_ℓ f̃_ℓ(ξ)`.
    pub fn check_poly(&self, e: usize) -> Poly<u32> {
        let mut xe = vec![0u32; e + 1];
        xe[e] = 1;
        let start = Poly::new(&self.base, xe);
        self.min_polys
            .iter()
            .fold(start, |acc, f| acc.mul(&self.base, f))
    }

    /// `h_{iδ}(ξ) ∏_{ℓ≠i} f̃_ℓ(ξ)`, the polynomial behind the recovery word.
    pub fn recovery_word_poly(&self, i: usize, delta_idx: usize) -> Poly<u32> {
        self.min_polys
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != i)
            .fold(self.recovery_polys[i][delta_idx].clone(), |acc, (_, f)| {
                acc.mul(&self.base, f)
            })
    }

    /// File size in base-field symbols: `Δ·s = k − 2b − t`.
    pub fn file_symbols(&self) -> usize {
        self.delta * self.s
    }

    pub fn field_description(&self) -> String {
        self.ext.description()
    }

    pub fn to_document(&self) -> ParamsDocument {
        let ext = &self.ext;
        let fmt = |x: &ExtElem| ext.format_elem(x);
        let padded = |p: &Poly<u32>| {
            (0..self.s)
                .map(|d| p.coeff(&self.base, d).to_string())
                .collect::<Vec<_>>()
                .join(":")
        };
        ParamsDocument {
            k: self.k,
            t: self.t,
            b: self.b,
            r: self.r,
            delta: self.delta,
            s: self.s,
            m: self.m,
            q: self.q(),
            field: self.field_description(),
            omega_alpha: self.omega_alpha.iter().map(fmt).collect(),
            omega_chi: self.omega_chi.iter().map(fmt).collect(),
            omega_beta: self.omega_beta.iter().map(|b| b.to_string()).collect(),
            min_polys: self.min_polys.iter().map(|p| p.format(&self.base)).collect(),
            u: self.u.iter().map(fmt).collect(),
            v: self.v.iter().map(fmt).collect(),
            theta: self.dual_pair.theta.iter().map(fmt).collect(),
            eta: self.dual_pair.eta.iter().map(fmt).collect(),
            recovery_polys: self
                .recovery_polys
                .iter()
                .map(|row| row.iter().map(padded).collect())
                .collect(),
            check_multipliers: self
                .check_code
                .multipliers()
                .iter()
                .map(|w| w.to_string())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    /// Rebuild from a serialized document; every published constant must
    /// match the deterministic construction exactly.
    pub fn from_document(doc: &ParamsDocument) -> Result<Self, PirError> {
        let params = Self::setup(&SetupRequest {
            k: doc.k,
            t: doc.t,
            b: doc.b,
            r: doc.r,
            m: doc.m,
            q: Some(doc.q),
        })?;
        let rebuilt = params.to_document();
        if rebuilt != *doc {
            return Err(PirError::InvalidParameters(
                "parameter document does not match the deterministic construction".into(),
            ));
        }
        Ok(params)
    }

    pub fn from_json(json: &str) -> Result<Self, PirError> {
        let doc: ParamsDocument = serde_json::from_str(json).map_err(|e| PirError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Self::from_document(&doc)
    }
}

/// Solve for `h_{iδ}`, `δ ∈ [s]`: the coordinates of
/// `u_i^{-1} η_δ ∏_{ℓ≠i} f̃_ℓ(α_i)^{-1}` in the basis `{1, α_i, ..., α_i^{s-1}}`.
fn recovery_polys_for(
    ext: &ExtField,
    i: usize,
    alphas: &[ExtElem],
    min_polys: &[Poly<u32>],
    u: &[ExtElem],
    pair: &DualBasisPair,
) -> Result<Vec<Poly<u32>>, PirError> {
    let base = ext.base();
    let s = ext.degree();
    let alpha = alphas[i];
    let others = min_polys
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != i)
        .fold(ext.one(), |acc, (_, f)| ext.mul(&acc, &ext.eval_base_poly(f, &alpha)));
    let scale = ext.inv(&ext.mul(&u[i], &others))?;
    let powers: Vec<ExtElem> = (0..s).map(|d| ext.pow(&alpha, d as u64)).collect();
    // column d holds the coordinates of α_i^d
    let matrix: linalg::Matrix<u32> = (0..s)
        .map(|row| powers.iter().map(|p| p.coords()[row]).collect())
        .collect();
    pair.eta
        .iter()
        .map(|eta| {
            let target = ext.mul(&scale, eta);
            let coeffs = linalg::solve(base, &matrix, target.coords()).ok_or_else(|| {
                PirError::Internal("α_i does not generate the extension".into())
            })?;
            Ok(Poly::new(base, coeffs))
        })
        .collect()
}

/// Serialized public parameters. Elements use the colon-joined coordinate
/// format; recovery polynomials are padded to exactly `s` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDocument {
    pub k: usize,
    pub t: usize,
    pub b: usize,
    pub r: usize,
    pub delta: usize,
    pub s: usize,
    pub m: usize,
    pub q: u64,
    pub field: String,
    pub omega_alpha: Vec<String>,
    pub omega_chi: Vec<String>,
    pub omega_beta: Vec<String>,
    pub min_polys: Vec<String>,
    pub u: Vec<String>,
    pub v: Vec<String>,
    pub theta: Vec<String>,
    pub eta: Vec<String>,
    pub recovery_polys: Vec<Vec<String>>,
    pub check_multipliers: Vec<String>,
}

/// File-size optimality flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityReport {
    /// One symbol of a common subfield `F_{q^R}` per server at capacity:
    /// `R = sΔ/(k−2b−t)` is an integer dividing `s`.
    pub balanced: bool,
    /// `Δ = r − 2b − t`.
    pub rate_optimal: bool,
    /// `sΔ = k − 2b − t`.
    pub file_size_optimal: bool,
    /// `(r − 2b − t) | (k − 2b − t)`.
    pub divisibility: bool,
    /// `sΔ ≥ k − 2b − t`.
    pub lower_bound_satisfied: bool,
}

impl OptimalityReport {
    pub fn evaluate(k: usize, t: usize, b: usize, r: usize, delta: usize, s: usize) -> Self {
        let n = k as i64 - 2 * b as i64 - t as i64;
        let d = r as i64 - 2 * b as i64 - t as i64;
        let size = (delta * s) as i64;
        let balanced = n > 0 && size % n == 0 && {
            let big_r = size / n;
            big_r > 0 && s as i64 % big_r == 0
        };
        Self {
            balanced,
            rate_optimal: d > 0 && delta as i64 == d,
            file_size_optimal: size == n,
            divisibility: d > 0 && n > 0 && n % d == 0,
            lower_bound_satisfied: size >= n,
        }
    }

    pub fn all(&self) -> bool {
        self.balanced
            && self.rate_optimal
            && self.file_size_optimal
            && self.divisibility
            && self.lower_bound_satisfied
    }
}

pub fn validate_optimality(params: &SchemeParams) -> OptimalityReport {
    OptimalityReport::evaluate(params.k, params.t, params.b, params.r, params.delta, params.s)
}
