use num_rational::Ratio;
use serde::Serialize;

use super::{run_session, AdversaryModel, HarnessError};
use crate::pir::{capacity, AnswerMode, Database, FieldRng, PirError, SchemeParams, SetupRequest};

/// One parameter tuple to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRequest {
    pub k: usize,
    pub t: usize,
    pub b: usize,
    pub r: usize,
    pub q: Option<u64>,
}

/// Cost and rate observed in live sessions, in base-field symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Measured {
    pub sessions: usize,
    pub q: u64,
    pub download_symbols: u64,
    pub file_symbols: u64,
    pub rate: String,
    pub matches_formula: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeColumn {
    pub scheme: String,
    /// `false` when the scheme's constraint chain rejects the tuple.
    pub constructible: bool,
    pub note: Option<String>,
    pub file_symbols: u64,
    pub download_symbols: u64,
    pub rate: String,
    pub capacity: String,
    pub field_size_exponent: Option<usize>,
    pub byzantine_resistance: usize,
    /// Cells in table row order: file size, field, download cost,
    /// download rate, capacity, byzantine resistance.
    pub cells: Vec<String>,
    pub measured: Option<Measured>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonTable {
    pub request: TableRequest,
    pub l: usize,
    pub q: u64,
    pub columns: Vec<SchemeColumn>,
}

pub const ROW_LABELS: [&str; 6] = [
    "File size",
    "Field",
    "Download cost",
    "Download rate",
    "Capacity",
    "Byzantine-resistance",
];

const MEASURED_LABELS: [&str; 2] = ["Download cost (measured)", "Download rate (measured)"];

struct Formula {
    scheme: &'static str,
    file_expr: &'static str,
    cost_expr: &'static str,
    rate_expr: &'static str,
    field_expr: Option<&'static str>,
    file: u64,
    cost: u64,
    /// `(numerator, denominator)` of the extension degree.
    degree: Option<(usize, usize)>,
    byz: usize,
    rate: Ratio<u64>,
    constructible: Result<(), String>,
}

fn formulas(req: &TableRequest, l: usize) -> [Formula; 4] {
    let TableRequest { k, t, b, r, .. } = *req;
    let l = l as u64;
    let (k64, t64, b64, r64) = (k as u64, t as u64, b as u64, r as u64);
    let sub = |a: u64, c: u64| a.saturating_sub(c);
    let n1 = sub(k64, t64);
    let d1 = sub(r64, t64);
    let n2 = sub(k64, 2 * b64 + t64);
    let d2 = sub(r64, 2 * b64 + t64);
    let chain = |d: u64, n: u64, label: &str| {
        if t == 0 {
            Err("t ≥ 1 violated".to_string())
        } else if d == 0 {
            Err(format!("t < r{label} violated"))
        } else if r > k {
            Err("r ≤ k violated".to_string())
        } else if n == 0 {
            Err(format!("t < k{label} violated"))
        } else {
            Ok(())
        }
    };
    let divisible = |d: u64, n: u64, label: &str, msg: &str| {
        chain(d, n, label).and_then(|_| if n % d == 0 { Ok(()) } else { Err(msg.to_string()) })
    };
    let rate = |n: u64| Ratio::new(n, k64.max(1));
    [
        Formula {
            scheme: "Π1",
            file_expr: "l(k−t)log(q)",
            cost_expr: "lk log(q)",
            rate_expr: "1−t/k",
            field_expr: Some("s=(k−t)/(r−t)"),
            file: l * n1,
            cost: l * k64,
            degree: Some((n1 as usize, d1 as usize)),
            byz: 0,
            rate: rate(n1),
            constructible: divisible(d1, n1, "", "(r−t) ∤ (k−t)"),
        },
        Formula {
            scheme: "Π2",
            file_expr: "l(k−2b−t)log(q)",
            cost_expr: "lk log(q)",
            rate_expr: "1−(2b+t)/k",
            field_expr: Some("s=(k−2b−t)/(r−2b−t)"),
            file: l * n2,
            cost: l * k64,
            degree: Some((n2 as usize, d2 as usize)),
            byz: b,
            rate: rate(n2),
            constructible: divisible(d2, n2, "−2b", "(r−2b−t) ∤ (k−2b−t)"),
        },
        Formula {
            scheme: "𝔸1",
            file_expr: "l(r−t)(k−t)log(q)",
            cost_expr: "lk(r−t)log(q)",
            rate_expr: "1−t/k",
            field_expr: None,
            file: l * d1 * n1,
            cost: l * k64 * d1,
            degree: None,
            byz: 0,
            rate: rate(n1),
            constructible: chain(d1, n1, ""),
        },
        Formula {
            scheme: "𝔸2",
            file_expr: "l(r−2b−t)(k−2b−t)log(q)",
            cost_expr: "lk(r−2b−t)log(q)",
            rate_expr: "1−(2b+t)/k",
            field_expr: None,
            file: l * d2 * n2,
            cost: l * k64 * d2,
            degree: None,
            byz: b,
            rate: rate(n2),
            constructible: chain(d2, n2, "−2b"),
        },
    ]
}

fn bits_cell(expr: &str, symbols: u64, q: u64) -> String {
    let bits = symbols as f64 * (q as f64).log2();
    format!("{expr} = {symbols}·log2({q}) = {bits:.3}")
}

/// Measure `l` honest trace-mode sessions of the `b`-byzantine scheme.
fn measure(req: &TableRequest, b: usize, l: usize, seed: u64) -> Result<(u64, u64, u64), PirError> {
    let mut setup = SetupRequest::new(req.k, req.t, b, req.r, 2);
    if b == req.b {
        setup.q = req.q;
    }
    let params = SchemeParams::setup(&setup)?;
    let mut rng = FieldRng::derive(seed, b as u64);
    let (mut down, mut file) = (0, 0);
    for i in 0..l {
        let db = Database::random(&params, &mut rng);
        let rep = run_session(&params, &db, 1 + i % params.m, &AdversaryModel::honest(), AnswerMode::Trace, rng.next_u64())
            .map_err(|e| PirError::Internal(e.to_string()))?;
        if !rep.succeeded() {
            return Err(PirError::Internal("honest session failed".into()));
        }
        down += rep.downloaded_symbols;
        file += rep.file_symbols;
    }
    Ok((params.q(), down, file))
}

/// The comparison table for each tuple: formula cells for all four schemes plus live
/// measurements for the two constructible ones.
pub fn comparison_table(requests: &[TableRequest], l: usize, seed: u64) -> Result<Vec<ComparisonTable>, HarnessError> {
    if l == 0 {
        return Err(PirError::InvalidParameters("l ≥ 1 violated".into()).into());
    }
    requests
        .iter()
        .map(|req| {
            // the byzantine scheme fixes the base field for every column
            let params = SchemeParams::setup(&SetupRequest {
                k: req.k,
                t: req.t,
                b: req.b,
                r: req.r,
                m: 1,
                q: req.q,
            })?;
            let q = params.q();
            let cap = capacity(req.t, req.b, req.k)?;
            let cap1 = capacity(req.t, 0, req.k)?;
            let columns = formulas(req, l)
                .into_iter()
                .map(|f| {
                    let field_cell = match (f.field_expr, f.degree) {
                        (Some(expr), Some((n, d))) if d > 0 && n % d == 0 => {
                            format!("F_{{q^s}}, {expr} = F_{{{q}^{}}}", n / d)
                        }
                        (Some(expr), Some((n, d))) => format!("F_{{q^s}}, {expr} = {n}/{d} (not an integer)"),
                        _ => format!("F_q = F_{q}"),
                    };
                    let byz_cell = if f.byz == 0 { "0".to_string() } else { format!("b≠0 (b={})", f.byz) };
                    let capacity = if f.scheme.ends_with('1') { cap1 } else { cap };
                    let cells = vec![
                        bits_cell(f.file_expr, f.file, q),
                        field_cell,
                        bits_cell(f.cost_expr, f.cost, q),
                        format!("{} = {}", f.rate_expr, f.rate),
                        format!("{} = {}", f.rate_expr, capacity),
                        byz_cell,
                    ];
                    let measured = match (f.scheme, &f.constructible) {
                        ("Π1" | "Π2", Ok(())) => {
                            let b = if f.scheme == "Π1" { 0 } else { req.b };
                            let (mq, down, file) = measure(req, b, l, seed)?;
                            let rate = Ratio::new(file, down);
                            Some(Measured {
                                sessions: l,
                                q: mq,
                                download_symbols: down,
                                file_symbols: file,
                                rate: rate.to_string(),
                                matches_formula: down == f.cost && file == f.file && rate == f.rate,
                            })
                        }
                        _ => None,
                    };
                    Ok(SchemeColumn {
                        scheme: f.scheme.into(),
                        constructible: f.constructible.is_ok(),
                        note: f.constructible.err(),
                        file_symbols: f.file,
                        download_symbols: f.cost,
                        rate: f.rate.to_string(),
                        capacity: capacity.to_string(),
                        field_size_exponent: f.degree.and_then(|(n, d)| (d > 0 && n % d == 0).then(|| n / d)),
                        byzantine_resistance: f.byz,
                        cells,
                        measured,
                    })
                })
                .collect::<Result<Vec<_>, PirError>>()?;
            Ok(ComparisonTable {
                request: *req,
                l,
                q,
                columns,
            })
        })
        .collect()
}

impl ComparisonTable {
    /// Row label followed by one cell per scheme, in row order, then the
    /// measured rows.
    pub fn rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = ROW_LABELS
            .iter()
            .enumerate()
            .map(|(i, label)| {
                std::iter::once(label.to_string())
                    .chain(self.columns.iter().map(|c| c.cells[i].clone()))
                    .collect()
            })
            .collect();
        let measured_cell = |c: &SchemeColumn, cost: bool| match &c.measured {
            Some(m) if cost => format!("{}·log2({}) [{}]", m.download_symbols, m.q, verdict(m.matches_formula)),
            Some(m) => format!("{} [{}]", m.rate, verdict(m.matches_formula)),
            None if c.constructible => "formula only".into(),
            None => format!("n/a ({})", c.note.as_deref().unwrap_or("not constructible")),
        };
        for (i, label) in MEASURED_LABELS.iter().enumerate() {
            rows.push(
                std::iter::once(label.to_string())
                    .chain(self.columns.iter().map(|c| measured_cell(c, i == 0)))
                    .collect(),
            );
        }
        rows
    }

    fn header(&self) -> Vec<String> {
        std::iter::once(format!(
            "k={} t={} b={} r={} q={} l={}",
            self.request.k, self.request.t, self.request.b, self.request.r, self.q, self.l
        ))
        .chain(self.columns.iter().map(|c| c.scheme.clone()))
        .collect()
    }

    pub fn to_text(&self) -> String {
        let mut all = vec![self.header()];
        all.extend(self.rows());
        let widths: Vec<usize> = (0..all[0].len())
            .map(|c| all.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &all {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell}{}", " ".repeat(w - cell.chars().count())))
                .collect();
            out.push_str(line.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let quote = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = String::new();
        for row in std::iter::once(self.header()).chain(self.rows()) {
            out.push_str(&row.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "= formula"
    } else {
        "MISMATCH"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(k: usize, t: usize, b: usize, r: usize) -> TableRequest {
        TableRequest { k, t, b, r, q: None }
    }

    #[test]
    fn small_instance_counts() {
        let tab = &comparison_table(&[req(4, 1, 1, 4)], 1, 0).unwrap()[0];
        assert_eq!(tab.q, 7);
        let counts: Vec<(u64, u64, &str)> = tab
            .columns
            .iter()
            .map(|c| (c.file_symbols, c.download_symbols, c.rate.as_str()))
            .collect();
        assert_eq!(counts, vec![(3, 4, "3/4"), (1, 4, "1/4"), (9, 12, "3/4"), (1, 4, "1/4")]);
        assert_eq!(tab.columns[1].cells[0], "l(k−2b−t)log(q) = 1·log2(7) = 2.807");
        assert_eq!(tab.columns[1].cells[1], "F_{q^s}, s=(k−2b−t)/(r−2b−t) = F_{7^1}");
        for c in &tab.columns[..2] {
            assert!(c.measured.as_ref().unwrap().matches_formula);
        }
    }

    #[test]
    fn indivisible_pi1_is_flagged() {
        let tab = &comparison_table(&[req(7, 1, 1, 5)], 2, 0).unwrap()[0];
        let pi1 = &tab.columns[0];
        assert!(!pi1.constructible);
        assert!(pi1.measured.is_none());
        assert!(pi1.cells[1].contains("6/4 (not an integer)"));
        let pi2 = &tab.columns[1];
        assert_eq!((pi2.file_symbols, pi2.download_symbols), (8, 14));
        assert!(pi2.measured.as_ref().unwrap().matches_formula);
        assert_eq!((tab.columns[2].file_symbols, tab.columns[3].file_symbols), (48, 16));
    }

    #[test]
    fn repetition_scales_linearly() {
        let one = &comparison_table(&[req(7, 1, 1, 5)], 1, 0).unwrap()[0];
        let two = &comparison_table(&[req(7, 1, 1, 5)], 2, 0).unwrap()[0];
        for (a, b) in one.columns.iter().zip(&two.columns) {
            assert_eq!(2 * a.file_symbols, b.file_symbols);
            assert_eq!(2 * a.download_symbols, b.download_symbols);
            assert_eq!(a.rate, b.rate);
        }
    }

    #[test]
    fn text_and_csv_layout() {
        let tab = &comparison_table(&[req(4, 1, 1, 4)], 1, 0).unwrap()[0];
        let text = tab.to_text();
        let labels: Vec<&str> = text.lines().skip(1).map(|l| l.split(" | ").next().unwrap().trim()).collect();
        assert_eq!(&labels[..6], &ROW_LABELS);
        assert_eq!(tab.to_csv().lines().count(), 9);
        assert!(comparison_table(&[req(4, 1, 1, 5)], 1, 0).is_err());
        assert!(comparison_table(&[req(4, 1, 1, 4)], 0, 0).is_err());
    }
}
