use serde::{Deserialize, Serialize};

use super::{FieldRng, PirError, SchemeParams};
use crate::gf::{ExtElem, ExtField, Field};
use crate::rscodes::lagrange_weights;

/// Dense `rows × cols` array of extension symbols, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolArray {
    rows: usize,
    cols: usize,
    data: Vec<ExtElem>,
}

impl SymbolArray {
    pub fn filled(rows: usize, cols: usize, x: ExtElem) -> Self {
        Self {
            rows,
            cols,
            data: vec![x; rows * cols],
        }
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<ExtElem>) -> Result<Self, PirError> {
        if data.len() != rows * cols {
            return Err(PirError::DimensionMismatch(format!(
                "{} symbols for a {rows}×{cols} array",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[ExtElem] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> ExtElem {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, x: ExtElem) {
        self.data[row * self.cols + col] = x;
    }

    pub fn format(&self, ext: &ExtField) -> Vec<Vec<String>> {
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().map(|x| ext.format_elem(x)).collect())
            .collect()
    }
}

/// What the client keeps to itself: the target and the `t` blinding arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClientSecret {
    pub iota: usize,
    pub blinding: Vec<SymbolArray>,
}

/// One query array per server plus the client's secret.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySet {
    /// `per_server[j] = g(β_{j+1})`.
    pub per_server: Vec<SymbolArray>,
    pub secret: ClientSecret,
}

/// Serialized form of a query set (element format from `gf`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryDocument {
    pub iota: usize,
    pub per_server: Vec<Vec<Vec<String>>>,
}

impl QuerySet {
    pub fn query(&self, server: usize) -> &SymbolArray {
        &self.per_server[server - 1]
    }

    pub fn to_document(&self, ext: &ExtField) -> QueryDocument {
        QueryDocument {
            iota: self.secret.iota,
            per_server: self.per_server.iter().map(|q| q.format(ext)).collect(),
        }
    }

    /// The query curve of entry `(row, col)` evaluated at an arbitrary point.
    pub fn curve_at(&self, params: &SchemeParams, row: usize, col: usize, x: &ExtElem) -> ExtElem {
        let ext = params.ext();
        let nodes: Vec<ExtElem> = params
            .omega_alpha()
            .iter()
            .chain(params.omega_chi())
            .copied()
            .collect();
        let weights = lagrange_weights(ext, &nodes, x).expect("evaluation nodes are distinct");
        let (ind, blinds) = entry_values(params, &self.secret, row, col);
        let values = ind.iter().chain(&blinds);
        ext.sum(
            weights
                .iter()
                .zip(values)
                .map(|(w, y)| ext.mul(w, y))
                .collect::<Vec<_>>()
                .iter(),
        )
    }
}

fn entry_values(
    params: &SchemeParams,
    secret: &ClientSecret,
    row: usize,
    col: usize,
) -> (Vec<ExtElem>, Vec<ExtElem>) {
    let ext = params.ext();
    let ind = (0..params.delta)
        .map(|a| {
            if row + 1 == secret.iota && col == a {
                ext.one()
            } else {
                ext.zero()
            }
        })
        .collect();
    let blinds = secret.blinding.iter().map(|r| r.get(row, col)).collect();
    (ind, blinds)
}

/// Evaluations at every `β_j` of the curve through `(α_a, indicator[a])`
/// and `(χ_h, blinds[h])`.
pub fn encode_entry(params: &SchemeParams, indicator: &[ExtElem], blinds: &[ExtElem]) -> Vec<ExtElem> {
    let ext = params.ext();
    params
        .indicator_weights()
        .iter()
        .zip(params.blind_weights())
        .map(|(iw, bw)| {
            let mut acc = ext.zero();
            for (w, y) in iw.iter().zip(indicator).chain(bw.iter().zip(blinds)) {
                if !ext.is_zero(y) {
                    acc = ext.add(&acc, &ext.mul(w, y));
                }
            }
            acc
        })
        .collect()
}

/// Draw `t` uniform blinding arrays (array-major, then entry order) and
/// build the query for file `iota`.
pub fn gen_queries(params: &SchemeParams, iota: usize, rng: &mut FieldRng) -> Result<QuerySet, PirError> {
    let ext = params.ext();
    let blinding = (0..params.t)
        .map(|_| {
            let data = (0..params.m * params.delta).map(|_| rng.element(ext)).collect();
            SymbolArray::from_data(params.m, params.delta, data)
        })
        .collect::<Result<Vec<_>, _>>()?;
    queries_with_blinding(params, iota, blinding)
}

/// Deterministic query construction from given blinding arrays; all-zero
/// blinding is a useful test hook.
pub fn queries_with_blinding(
    params: &SchemeParams,
    iota: usize,
    blinding: Vec<SymbolArray>,
) -> Result<QuerySet, PirError> {
    if iota == 0 || iota > params.m {
        return Err(PirError::IndexOutOfRange { iota, m: params.m });
    }
    if blinding.len() != params.t
        || blinding
            .iter()
            .any(|r| r.rows != params.m || r.cols != params.delta)
    {
        return Err(PirError::DimensionMismatch(format!(
            "expected {} blinding arrays of shape {}×{}",
            params.t, params.m, params.delta
        )));
    }
    let zero = params.ext().zero();
    let secret = ClientSecret { iota, blinding };
    let mut per_server = vec![SymbolArray::filled(params.m, params.delta, zero); params.k];
    for row in 0..params.m {
        for col in 0..params.delta {
            let (ind, blinds) = entry_values(params, &secret, row, col);
            for (j, y) in encode_entry(params, &ind, &blinds).into_iter().enumerate() {
                per_server[j].set(row, col, y);
            }
        }
    }
    Ok(QuerySet { per_server, secret })
}
