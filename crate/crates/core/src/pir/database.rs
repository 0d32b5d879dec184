use super::{FieldRng, PirError, SchemeParams};
use crate::gf::{ExtElem, ExtField, Field};

/// `m × Δ` array of extension symbols; row `i` is file `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Database {
    m: usize,
    delta: usize,
    entries: Vec<ExtElem>,
}

impl Database {
    pub fn new(m: usize, delta: usize, entries: Vec<ExtElem>) -> Result<Self, PirError> {
        if m == 0 || delta == 0 || entries.len() != m * delta {
            return Err(PirError::DimensionMismatch(format!(
                "{} entries for a {m}×{delta} database",
                entries.len()
            )));
        }
        Ok(Self { m, delta, entries })
    }

    pub fn from_rows(rows: Vec<Vec<ExtElem>>) -> Result<Self, PirError> {
        let m = rows.len();
        let delta = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != delta) {
            return Err(PirError::DimensionMismatch("ragged database rows".into()));
        }
        Self::new(m, delta, rows.into_iter().flatten().collect())
    }

    pub fn zeros(params: &SchemeParams) -> Self {
        let zero = params.ext().zero();
        Self {
            m: params.m,
            delta: params.delta,
            entries: vec![zero; params.m * params.delta],
        }
    }

    /// Uniformly random contents drawn from `rng`.
    pub fn random(params: &SchemeParams, rng: &mut FieldRng) -> Self {
        let ext = params.ext();
        let entries = (0..params.m * params.delta)
            .map(|_| rng.element(ext))
            .collect();
        Self {
            m: params.m,
            delta: params.delta,
            entries,
        }
    }

    pub fn files(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn entries(&self) -> &[ExtElem] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> ExtElem {
        self.entries[row * self.delta + col]
    }

    pub fn set(&mut self, row: usize, col: usize, x: ExtElem) {
        self.entries[row * self.delta + col] = x;
    }

    /// File `iota` (one-based).
    pub fn file(&self, iota: usize) -> Result<&[ExtElem], PirError> {
        if iota == 0 || iota > self.m {
            return Err(PirError::IndexOutOfRange { iota, m: self.m });
        }
        Ok(&self.entries[(iota - 1) * self.delta..iota * self.delta])
    }

    pub fn check_shape(&self, params: &SchemeParams) -> Result<(), PirError> {
        if self.m != params.m || self.delta != params.delta {
            return Err(PirError::DimensionMismatch(format!(
                "database is {}×{}, parameters expect {}×{}",
                self.m, self.delta, params.m, params.delta
            )));
        }
        Ok(())
    }

    /// One file per line: `<x1>,<x2>,...,<xΔ>`.
    pub fn to_text(&self, ext: &ExtField) -> String {
        let mut out = String::new();
        for row in self.entries.chunks(self.delta) {
            let line: Vec<String> = row.iter().map(|x| ext.format_elem(x)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parse the line format; blank lines are skipped, errors carry
    /// one-based line numbers.
    pub fn parse(text: &str, ext: &ExtField, delta: usize) -> Result<Self, PirError> {
        let mut rows = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|sym| ext.parse_elem(sym))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| PirError::Parse {
                    line: no + 1,
                    message: e.to_string(),
                })?;
            if row.len() != delta {
                return Err(PirError::Parse {
                    line: no + 1,
                    message: format!("expected {delta} symbols, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(PirError::Parse {
                line: 0,
                message: "database is empty".into(),
            });
        }
        Self::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pir::SetupRequest;

    #[test]
    fn text_round_trip() {
        let p = SchemeParams::setup(&SetupRequest::new(7, 1, 1, 5, 3)).unwrap();
        let db = Database::random(&p, &mut FieldRng::new(9));
        let text = db.to_text(p.ext());
        assert_eq!(text.lines().count(), 3);
        assert_eq!(Database::parse(&text, p.ext(), p.delta).unwrap(), db);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let p = SchemeParams::setup(&SetupRequest::new(7, 1, 1, 5, 3)).unwrap();
        let err = Database::parse("1:2,3:4\n1:2,9:0\n", p.ext(), 2).unwrap_err();
        assert!(matches!(err, PirError::Parse { line: 2, .. }), "{err:?}");
        let err = Database::parse("1:2,3:4\n1:2\n", p.ext(), 2).unwrap_err();
        assert!(matches!(err, PirError::Parse { line: 2, .. }));
        assert!(Database::parse("\n", p.ext(), 2).is_err());
    }

    #[test]
    fn file_index_bounds() {
        let p = SchemeParams::setup(&SetupRequest::new(4, 1, 1, 4, 2)).unwrap();
        let db = Database::zeros(&p);
        assert!(db.file(1).is_ok());
        assert_eq!(db.file(0), Err(PirError::IndexOutOfRange { iota: 0, m: 2 }));
        assert!(db.file(3).is_err());
    }
}
