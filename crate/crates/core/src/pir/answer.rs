use serde::{Deserialize, Serialize};

use super::{Database, PirError, SchemeParams, SymbolArray};
use crate::gf::{ExtElem, Field};

/// How servers respond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnswerMode {
    /// `φ(β_j)` in the extension field; `s` base symbols per answer.
    Full,
    /// `Tr(v_j φ(β_j))`; one base symbol per answer.
    Trace,
}

impl AnswerMode {
    pub fn name(self) -> &'static str {
        match self {
            AnswerMode::Full => "full",
            AnswerMode::Trace => "trace",
        }
    }
}

impl std::str::FromStr for AnswerMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(AnswerMode::Full),
            "trace" => Ok(AnswerMode::Trace),
            other => Err(format!("unknown answer mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Full(ExtElem),
    Trace(u32),
}

impl Answer {
    pub fn mode(&self) -> AnswerMode {
        match self {
            Answer::Full(_) => AnswerMode::Full,
            Answer::Trace(_) => AnswerMode::Trace,
        }
    }

    /// Download cost in base-field symbols.
    pub fn symbols(&self, params: &SchemeParams) -> usize {
        match self {
            Answer::Full(_) => params.s,
            Answer::Trace(_) => 1,
        }
    }
}

/// Frobenius inner product of query and database, then the mode's output
/// map. `server` is one-based.
pub fn server_answer(
    params: &SchemeParams,
    server: usize,
    query: &SymbolArray,
    db: &Database,
    mode: AnswerMode,
) -> Result<Answer, PirError> {
    if server == 0 || server > params.k {
        return Err(PirError::DimensionMismatch(format!(
            "server id {server} outside [1, {}]",
            params.k
        )));
    }
    db.check_shape(params)?;
    if query.rows() != db.files() || query.cols() != db.delta() {
        return Err(PirError::DimensionMismatch(format!(
            "query is {}×{}, database is {}×{}",
            query.rows(),
            query.cols(),
            db.files(),
            db.delta()
        )));
    }
    let ext = params.ext();
    let a = query
        .data()
        .iter()
        .zip(db.entries())
        .fold(ext.zero(), |acc, (g, x)| ext.add(&acc, &ext.mul(g, x)));
    Ok(match mode {
        AnswerMode::Full => Answer::Full(a),
        AnswerMode::Trace => Answer::Trace(ext.try_trace(&ext.mul(&params.v()[server - 1], &a))?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Poly;
    use crate::pir::{gen_queries, queries_with_blinding, FieldRng, SetupRequest};
    use crate::rscodes::lagrange_interpolate;

    #[test]
    fn zero_database_answers_zero() {
        let p = SchemeParams::setup(&SetupRequest::new(7, 1, 1, 5, 2)).unwrap();
        let db = Database::zeros(&p);
        let qs = gen_queries(&p, 1, &mut FieldRng::new(3)).unwrap();
        for j in 1..=p.k {
            assert_eq!(
                server_answer(&p, j, qs.query(j), &db, AnswerMode::Full).unwrap(),
                Answer::Full(p.ext().zero())
            );
            assert_eq!(server_answer(&p, j, qs.query(j), &db, AnswerMode::Trace).unwrap(), Answer::Trace(0));
        }
    }

    #[test]
    fn unblinded_answers_interpolate_to_file() {
        let p = SchemeParams::setup(&SetupRequest::new(7, 1, 1, 5, 3)).unwrap();
        let ext = p.ext();
        let db = Database::random(&p, &mut FieldRng::new(11));
        let zero = crate::pir::SymbolArray::filled(p.m, p.delta, ext.zero());
        let qs = queries_with_blinding(&p, 2, vec![zero; p.t]).unwrap();
        let pts: Vec<_> = (1..=p.delta + p.t)
            .map(|j| match server_answer(&p, j, qs.query(j), &db, AnswerMode::Full).unwrap() {
                Answer::Full(a) => (p.beta_ext()[j - 1], a),
                Answer::Trace(_) => unreachable!(),
            })
            .collect();
        let phi = lagrange_interpolate(ext, &pts).unwrap();
        for (i, alpha) in p.omega_alpha().iter().enumerate() {
            assert_eq!(phi.eval(ext, alpha), db.get(1, i));
        }
    }

    #[test]
    fn answers_match_symbolic_inner_product() {
        // build every entry's curve as a polynomial, form <g(ξ), x>
        // symbolically and substitute β_j
        let p = SchemeParams::setup(&SetupRequest::new(4, 1, 1, 4, 2)).unwrap();
        let ext = p.ext();
        let db = Database::random(&p, &mut FieldRng::new(5));
        for iota in 1..=p.m {
            let qs = gen_queries(&p, iota, &mut FieldRng::new(100 + iota as u64)).unwrap();
            let mut phi = Poly::zero();
            for row in 0..p.m {
                for col in 0..p.delta {
                    let mut pts: Vec<(ExtElem, ExtElem)> = p
                        .omega_alpha()
                        .iter()
                        .enumerate()
                        .map(|(a, alpha)| {
                            let e = if row + 1 == iota && col == a { ext.one() } else { ext.zero() };
                            (*alpha, e)
                        })
                        .collect();
                    for (h, chi) in p.omega_chi().iter().enumerate() {
                        pts.push((*chi, qs.secret.blinding[h].get(row, col)));
                    }
                    let g = lagrange_interpolate(ext, &pts).unwrap();
                    phi = phi.add(ext, &g.scale(ext, &db.get(row, col)));
                }
            }
            assert!(phi.degree().map_or(true, |d| d <= p.r - 2 * p.b - 1));
            for j in 1..=p.k {
                let want = phi.eval(ext, &p.beta_ext()[j - 1]);
                assert_eq!(
                    server_answer(&p, j, qs.query(j), &db, AnswerMode::Full).unwrap(),
                    Answer::Full(want)
                );
            }
        }
    }

    #[test]
    fn shape_errors() {
        let p = SchemeParams::setup(&SetupRequest::new(4, 1, 1, 4, 2)).unwrap();
        let db = Database::zeros(&p);
        let bad = SymbolArray::filled(3, 1, p.ext().zero());
        assert!(server_answer(&p, 1, &bad, &db, AnswerMode::Full).is_err());
        let ok = SymbolArray::filled(2, 1, p.ext().zero());
        assert!(server_answer(&p, 0, &ok, &db, AnswerMode::Full).is_err());
        assert!(server_answer(&p, 5, &ok, &db, AnswerMode::Full).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("trace".parse::<AnswerMode>(), Ok(AnswerMode::Trace));
        assert!("both".parse::<AnswerMode>().is_err());
    }
}
