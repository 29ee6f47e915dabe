//! Batch rows of extreme-coefficient data, one per named diagram.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circlegraph::extreme_coefficient;
use crate::diagram::{parse_corpus, PdCode, PlanarDiagram};
use crate::error::Result;
use crate::states::{bracket_bruteforce_with_cap, extreme_bounds, Marker};

pub const TSV_COLUMNS: [&str; 9] = [
    "name",
    "beta_hat",
    "a_hat_sB",
    "chords_B_summary",
    "a_hat_sA",
    "chords_A_summary",
    "beta_actual",
    "plus_adequate",
    "minus_adequate",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    /// Extreme-states bound on the Jones spread.
    pub beta_hat: i64,
    pub a_hat_b: i128,
    pub chords_b: String,
    pub a_hat_a: i128,
    pub chords_a: String,
    /// Jones spread from the state sum, when it was run.
    pub beta_actual: Option<u64>,
    pub plus_adequate: bool,
    pub minus_adequate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub name: String,
    pub row: Option<TableRow>,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableOptions {
    pub with_oracle: bool,
    pub cap: usize,
}

pub fn table_row(name: &str, d: &PlanarDiagram, opts: TableOptions) -> Result<TableRow> {
    let a = extreme_coefficient(d, Marker::A)?;
    let b = extreme_coefficient(d, Marker::B)?;
    let bounds = extreme_bounds(d);
    let beta_actual = if opts.with_oracle && d.crossing_count() <= opts.cap {
        bracket_bruteforce_with_cap(d, opts.cap)?.spread().ok().map(|s| s / 4)
    } else {
        None
    };
    Ok(TableRow {
        name: name.to_string(),
        beta_hat: bounds.spread_bound / 4,
        a_hat_b: b.f_value,
        chords_b: b.graph.summary(),
        a_hat_a: a.f_value,
        chords_a: a.graph.summary(),
        beta_actual,
        plus_adequate: a.adequate,
        minus_adequate: b.adequate,
    })
}

fn entry(name: String, pd: Result<PdCode>, opts: TableOptions) -> TableEntry {
    match pd.and_then(|pd| PlanarDiagram::build(&pd)).and_then(|d| table_row(&name, &d, opts)) {
        Ok(row) => TableEntry { name, row: Some(row), error: None },
        Err(e) => TableEntry { name, row: None, error: Some(e.to_string()) },
    }
}

/// One entry per record, in input order; a bad record does not stop the batch.
pub fn table(corpus: &str, opts: TableOptions) -> Result<Vec<TableEntry>> {
    let records = parse_corpus(corpus)?;
    Ok(records
        .into_par_iter()
        .map(|(name, pd)| entry(name, pd, opts))
        .collect())
}

pub fn to_tsv(entries: &[TableEntry]) -> String {
    let mut out = TSV_COLUMNS.join("\t");
    out.push('\n');
    for e in entries {
        let line = match (&e.row, &e.error) {
            (Some(r), _) => [
                r.name.clone(),
                r.beta_hat.to_string(),
                r.a_hat_b.to_string(),
                r.chords_b.clone(),
                r.a_hat_a.to_string(),
                r.chords_a.clone(),
                r.beta_actual.map_or(String::new(), |b| b.to_string()),
                r.plus_adequate.to_string(),
                r.minus_adequate.to_string(),
            ]
            .join("\t"),
            (None, err) => format!("{}\terror: {}", e.name, err.as_deref().unwrap_or("unknown")),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::ROLFSEN_NONALTERNATING;

    const OPTS: TableOptions = TableOptions { with_oracle: true, cap: 24 };

    #[test]
    fn first_rows() {
        let head: String = ROLFSEN_NONALTERNATING
            .split("name 9_")
            .next()
            .unwrap()
            .to_string();
        let rows = table(&head, OPTS).unwrap();
        let got: Vec<(i64, i128, i128)> = rows
            .iter()
            .map(|e| {
                let r = e.row.as_ref().unwrap();
                (r.beta_hat, r.a_hat_b, r.a_hat_a)
            })
            .collect();
        assert_eq!(got, [(6, 0, 1), (6, 1, 1), (6, 2, 1)]);
        assert_eq!(rows[0].row.as_ref().unwrap().beta_actual, Some(5));
        let tsv = to_tsv(&rows);
        assert!(tsv.starts_with("name\tbeta_hat\ta_hat_sB\t"));
        assert_eq!(tsv.lines().count(), 4);
    }

    #[test]
    fn bad_records_are_reported_inline() {
        let text = "name good\nX(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nname bad\nX(1,2,3)\nname big\nX(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n";
        let rows = table(text, TableOptions { with_oracle: true, cap: 2 }).unwrap();
        assert!(rows[0].row.as_ref().unwrap().beta_actual.is_none());
        assert!(rows[1].error.is_some());
        assert!(rows[2].row.is_some());
        let tsv = to_tsv(&rows);
        assert!(tsv.lines().nth(2).unwrap().starts_with("bad\terror: "));
    }
}
