//! Published reference tables, stored exactly as printed.
//!
//! Cells keep their original typography (thin-space thousands separators,
//! one decimal comma); [`parse_units`] is the only normalization applied.

use serde::Serialize;

use super::TableId;
use crate::error::{Error, Result};

/// How a column's cells are judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ComparisonMode {
    /// Equal after rounding half away from zero to 6 decimals.
    Exact6dp,
    /// Within a fixed statistical band.
    Statistical,
    /// Reported side by side, never judged.
    Diagnostic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenColumn {
    pub key: &'static str,
    pub header: &'static str,
    pub mode: ComparisonMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    pub n: usize,
    pub cells: &'static [&'static str],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenTable {
    pub table_id: TableId,
    pub source: &'static str,
    pub columns: &'static [GoldenColumn],
    pub rows: &'static [GoldenRow],
}

impl GoldenTable {
    pub fn column_index(&self, key: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.key == key)
    }
}

const fn col(key: &'static str, header: &'static str, mode: ComparisonMode) -> GoldenColumn {
    GoldenColumn { key, header, mode }
}

const fn row(n: usize, cells: &'static [&'static str]) -> GoldenRow {
    GoldenRow { n, cells }
}

use ComparisonMode::{Exact6dp, Statistical};

pub const TABLE_1: GoldenTable = GoldenTable {
    table_id: TableId::T1,
    source: "Table 1: Values of C_L, sqrt(pi n/2) + 2/3, n!/n^n, kappa(n), delta(n) for n = 1..10",
    columns: &[
        col("c_linear", "C_L", Exact6dp),
        col(
            "sqrt_half_pi_n_plus_two_thirds",
            "sqrt(pi n/2) + 2/3",
            Exact6dp,
        ),
        col("factorial_ratio", "n!/n^n", Exact6dp),
        col("kappa", "kappa(n)", Exact6dp),
        col("delta", "delta(n)", Exact6dp),
    ],
    rows: &[
        row(
            1,
            &["1.000000", "1.919981", "1.000000", "0.080019", "-0.919981"],
        ),
        row(
            2,
            &["2.000000", "2.439121", "0.500000", "0.060879", "-0.439121"],
        ),
        row(
            3,
            &["2.666667", "2.837470", "0.222222", "0.051418", "-0.170804"],
        ),
        row(
            4,
            &["3.125000", "3.173295", "0.093750", "0.045455", "-0.048295"],
        ),
        row(
            5,
            &["3.472000", "3.469162", "0.038400", "0.041238", "+0.002838"],
        ),
        row(
            6,
            &["3.759259", "3.736647", "0.015432", "0.038045", "+0.022612"],
        ),
        row(
            7,
            &["4.012019", "3.982624", "0.006120", "0.035515", "+0.029395"],
        ),
        row(
            8,
            &["4.242615", "4.211574", "0.002403", "0.033444", "+0.031040"],
        ),
        row(
            9,
            &["4.457379", "4.426609", "0.000937", "0.031707", "+0.030770"],
        ),
        row(
            10,
            &["4.659853", "4.629994", "0.000363", "0.030222", "+0.029859"],
        ),
    ],
};

pub const TABLE_2: GoldenTable = GoldenTable {
    table_id: TableId::T2,
    source: "Table 2: Values of C_B, n - sqrt(pi n/8) + 2/3, (n!/n^n)((n+1)/2), kappa(n), alpha(n) for n = 1..10",
    columns: &[
        col("c_backward", "C_B", Exact6dp),
        col("n_minus_sqrt_pi_n_8_plus_two_thirds", "n - sqrt(pi n/8) + 2/3", Exact6dp),
        col("factorial_ratio_half_n_plus_one", "(n!/n^n)((n+1)/2)", Exact6dp),
        col("kappa", "kappa(n)", Exact6dp),
        col("alpha", "alpha(n)", Exact6dp),
    ],
    rows: &[
        row(1, &["0.000000", "1.040010", "1.000000", "0.080019", "1.040010"]),
        row(2, &["1.000000", "1.780440", "0.750000", "0.060879", "0.780440"]),
        row(3, &["2.111111", "2.581265", "0.444444", "0.051418", "0.470154"]),
        row(4, &["3.156250", "3.413353", "0.234375", "0.045455", "0.257103"]),
        row(5, &["4.129600", "4.265419", "0.115200", "0.041238", "0.135819"]),
        row(6, &["5.058642", "5.131677", "0.054012", "0.038045", "0,073035"]),
        row(7, &["5.966451", "6.008688", "0.024480", "0.035515", "0.042237"]),
        row(8, &["6.866676", "6.894213", "0.010815", "0.033444", "0.027536"]),
        row(9, &["7.766159", "7.786695", "0.004683", "0.031707", "0.020537"]),
        row(10, &["8.667896", "8.685003", "0.001996", "0.030222", "0.017107"]),
    ],
};

pub const TABLE_3: GoldenTable = GoldenTable {
    table_id: TableId::T3,
    source: "Table 3: number of input sequences, number of good sequences, C_F (FORWARD) and C_W (BACKWARD) for n = 2..9",
    columns: &[
        col("sequences", "number of sequences", Exact6dp),
        col("good_sequences", "number of good sequences", Exact6dp),
        col("c_forward", "C_F", Exact6dp),
        col("c_backward", "C_W", Exact6dp),
    ],
    rows: &[
        row(2, &["4", "2", "1.000000", "1.000000"]),
        row(3, &["27", "6", "2.111111", "2.111111"]),
        row(4, &["256", "24", "3.203125", "3.156250"]),
        row(5, &["3 125", "120", "4.264000", "4.126960"]),
        row(6, &["46 656", "720", "5.342341", "5.058642"]),
        row(7, &["823 543", "5 040", "6.326760", "5.966451"]),
        row(8, &["16 777 216", "40 320", "7.342926", "6.866676"]),
        row(9, &["387 420 489", "362 880", "8.354165", "7.766159"]),
    ],
};

pub const TABLE_4: GoldenTable = GoldenTable {
    table_id: TableId::T4,
    source: "Table 4: number of good inputs, comparisons and assignments of TREE over 100 000 random inputs, n = 1..20",
    columns: &[
        col("good_inputs", "number of good inputs", Statistical),
        col("comparisons", "number of comparisons", Statistical),
        col("assignments", "number of assignments", Statistical),
    ],
    rows: &[
        row(1, &["100 000.000000", "0.000000", "1.000000"]),
        row(2, &["49 946.000000", "1.000000", "1.499460"]),
        row(3, &["22 243.000000", "2.038960", "1.889900"]),
        row(4, &["9 396.000000", "2.921710", "2.219390"]),
        row(5, &["3 723.000000", "3.682710", "2.511409"]),
        row(6, &["1 569.000000", "4.352690", "2.773160"]),
        row(7, &["620.000000", "4.985280", "3.021820"]),
        row(8, &["251.000000", "5.590900", "3.252989"]),
        row(9, &["104", "6.148550", "3.459510"]),
        row(10, &["33", "6.704350", "3.663749"]),
        row(11, &["17", "7.271570", "3.860450"]),
        row(12, &["3", "7.779950", "4.039530"]),
        row(13, &["3", "8.314370", "4.214370"]),
        row(14, &["0", "8.824660", "4.384480"]),
        row(15, &["2", "9.302720", "4.537880"]),
        row(16, &["0", "9.840690", "4.716760"]),
        row(17, &["0", "10.287560", "4.853530"]),
        row(18, &["0", "10.719770", "4.989370"]),
        row(19, &["0", "11.242740", "5.147560"]),
        row(20, &["0", "11.689660", "5.279180"]),
    ],
};

/// Sample size behind every Table 4 row.
pub const TABLE_4_SAMPLE_COUNT: u64 = 100_000;

pub const TABLE_5: GoldenTable = GoldenTable {
    table_id: TableId::T5,
    source: "Table 5: Values of E{b_1}, sqrt(pi/2), 1/(3 sqrt(n)), kappa(n)/sqrt(n), mu(n) of BUCKET for n = 1..10",
    columns: &[
        col("e_bucket_occupancy", "E{b_1}", Exact6dp),
        col("sqrt_half_pi", "sqrt(pi/2)", Exact6dp),
        col("one_third_over_sqrt_n", "1/(3 sqrt(n))", Exact6dp),
        col("kappa_over_sqrt_n", "kappa(n)/sqrt(n)", Exact6dp),
        col("mu", "mu(n)", Exact6dp),
    ],
    rows: &[
        row(1, &["1.000000", "1.253314", "0.333333", "0.080019", "0.253314"]),
        row(2, &["1.060660", "1.253314", "0.235702", "0.043048", "0.192654"]),
        row(3, &["1.090055", "1.253314", "0.192450", "0.029686", "0.162764"]),
        row(4, &["1.109375", "1.253314", "0.166667", "0.022727", "0.143940"]),
        row(5, &["1.122685", "1.253314", "0.149071", "0.018442", "0.130629"]),
        row(6, &["1.132763", "1.253314", "0.136083", "0.015532", "0.120551"]),
        row(7, &["1.147287", "1.253314", "0.125988", "0.013423", "0.112565"]),
        row(8, &["1.147287", "1.253314", "0.117851", "0.011824", "0.106027"]),
        row(9, &["1.152772", "1.253314", "0.111111", "0.010569", "0.100542"]),
        row(10, &["1.157462", "1.253314", "0.105409", "0.009557", "0.095852"]),
    ],
};

pub fn golden_table(id: TableId) -> &'static GoldenTable {
    match id {
        TableId::T1 => &TABLE_1,
        TableId::T2 => &TABLE_2,
        TableId::T3 => &TABLE_3,
        TableId::T4 => &TABLE_4,
        TableId::T5 => &TABLE_5,
    }
}

/// Parses a printed cell into millionths: drops thousands separators, reads a
/// decimal comma as a point, accepts a leading `+`.
pub fn parse_units(cell: &str) -> Result<i64> {
    let bad = || Error::InvalidParameter(format!("malformed table cell `{cell}`"));
    let cleaned: String = cell
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == ',' { '.' } else { c })
        .collect();
    let (negative, body) = match cleaned.as_bytes().first() {
        Some(b'-') => (true, &cleaned[1..]),
        Some(b'+') => (false, &cleaned[1..]),
        _ => (false, cleaned.as_str()),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty()
        || frac.len() > 6
        || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let int: i64 = int.parse().map_err(|_| bad())?;
    let frac: i64 = if frac.is_empty() {
        0
    } else {
        format!("{frac:0<6}").parse().map_err(|_| bad())?
    };
    let units = int * 1_000_000 + frac;
    Ok(if negative { -units } else { units })
}

pub fn parse_value(cell: &str) -> Result<f64> {
    parse_units(cell).map(|u| u as f64 / 1e6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_cells() {
        assert_eq!(parse_units("0,073035").unwrap(), 73_035);
        assert_eq!(parse_units("-0.919981").unwrap(), -919_981);
        assert_eq!(parse_units("+0.002838").unwrap(), 2_838);
        assert_eq!(parse_units("387 420 489").unwrap(), 387_420_489_000_000);
        assert_eq!(parse_units("100 000.000000").unwrap(), 100_000_000_000);
        assert_eq!(parse_units("4.5").unwrap(), 4_500_000);
        assert!(parse_units("").is_err());
        assert!(parse_units("1.2345678").is_err());
        assert!(parse_units("abc").is_err());
    }

    #[test]
    fn every_cell_parses_and_rows_are_rectangular() {
        for id in TableId::ALL {
            let t = golden_table(id);
            assert_eq!(t.table_id, id);
            for r in t.rows {
                assert_eq!(r.cells.len(), t.columns.len(), "{id:?} row {}", r.n);
                for c in r.cells {
                    parse_units(c).unwrap();
                }
            }
        }
    }

    #[test]
    fn cells_kept_verbatim() {
        assert_eq!(TABLE_2.rows[5].cells[4], "0,073035");
        assert_eq!(TABLE_3.rows[5].cells[1], "5 040");
        assert_eq!(TABLE_1.rows[4].cells[4], "+0.002838");
        assert_eq!(TABLE_4.rows[8].cells[0], "104");
    }
}
