use serde::Serialize;

/// Bumped whenever an entry is added, removed or reworded.
pub const LEDGER_VERSION: u32 = 1;

/// A known inconsistency in the published material and how this crate
/// handles it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub id: &'static str,
    pub location: &'static str,
    pub issue: &'static str,
    pub resolution: &'static str,
}

const fn entry(
    id: &'static str,
    location: &'static str,
    issue: &'static str,
    resolution: &'static str,
) -> Discrepancy {
    Discrepancy {
        id,
        location,
        issue,
        resolution,
    }
}

const LEDGER: &[Discrepancy] = &[
    entry(
        "backward-radical-sign",
        "BACKWARD expected comparisons and running time; Table 2 header \"n − √(πn/8) + 2/3\"",
        "The formulas print C_B = n + √(πn/8) + 2/3 − α(n) and T_B = n + √(πn/8) + 4/3 − α(n), while the table column subtracts the radical.",
        "The radical is subtracted in both. This gives C_B(1) = 0, which a one-element input forces, and reproduces every Table 2 cell.",
    ),
    entry(
        "bucket-row-index",
        "BUCKET pseudocode, line 06 \"r ← ⌈s[i]/m⌉ m\"",
        "The trailing factor m would send most elements past the last of the m rows.",
        "Rows are chosen by r = ⌈s[i]/m⌉.",
    ),
    entry(
        "bucket-non-square",
        "BUCKET description, \"we suppose that n is a square\"",
        "Behaviour for non-square n is not given.",
        "m = ⌈√n⌉ for every n with the same row rule; trailing rows may stay empty.",
    ),
    entry(
        "garbage-guard",
        "GARBAGE pseudocode, line 03 \"v[s[i]] < i and s[v[s[i]]] = s[i]\"",
        "With arbitrary initial contents v[s[i]] may be zero or negative, and s would then be indexed out of range.",
        "The stale-cell test is 1 ≤ v[s[i]] < i before s is indexed; verdicts are correct for every pre-fill.",
    ),
    entry(
        "kappa-summand",
        "Definition of κ(n), summand n!k/((n−k)! n^(k+1))",
        "That summand is the distribution of the first-repetition index and sums to exactly 1 for every n, which contradicts every printed κ value.",
        "κ(n) = 1/3 − √(πn/2) + Q(n) with Ramanujan's Q(n) = Σ n!/((n−k)! n^k); this matches Tables 1, 2 and 5 and makes both printed forms of C_L agree.",
    ),
    entry(
        "table2-decimal-comma",
        "Table 2, row n = 6, column α(n): \"0,073035\"",
        "Typographic decimal comma.",
        "Read as 0.073035; the stored cell keeps the comma.",
    ),
    entry(
        "table3-row5-backward",
        "Table 3, row n = 5, column C_W: \"4.126960\"",
        "Enumeration of all 3125 inputs gives 12905/3125 = 4.129600, which is also the Table 2 value of C_B(5); the printed cell transposes two digits.",
        "Not adjusted. The cell fails the 6-decimal comparison and is reported as such.",
    ),
    entry(
        "table3-row6-forward",
        "Table 3, row n = 6, column C_F: \"5.342341\"",
        "Enumeration of all 46656 inputs gives 247386/46656 = 5.302341; the printed cell differs in one digit.",
        "Not adjusted. The cell fails the 6-decimal comparison and is reported as such.",
    ),
    entry(
        "table5-row3-transposed",
        "Table 5, row n = 3, column E{b_1}: \"1.090055\"",
        "√(π/2) − μ(3) = 1.090551; the printed cell transposes two digits. The row's own μ cell (0.162764) agrees with 1.090551.",
        "Not adjusted. The cell fails the 6-decimal comparison and is reported as such.",
    ),
    entry(
        "table5-row7-duplicate",
        "Table 5, row n = 7, column E{b_1}: \"1.147287\"",
        "The cell repeats row n = 8. √(π/2) − μ(7) = 1.140749, consistent with the row's μ cell 0.112565.",
        "Not adjusted. The cell fails the 6-decimal comparison and is reported as such.",
    ),
    entry(
        "table5-row4-rounding",
        "Table 5, row n = 4, columns κ(n)/√n \"0.022727\" and μ(n) \"0.143940\"",
        "Exact values are 0.02272753 and 0.14393914; the printed cells follow from the already-rounded κ(4) = 0.045455.",
        "Not adjusted. Both cells fail the 6-decimal comparison; E{b_1}(4) = 1.109375 is exact and passes.",
    ),
    entry(
        "bucket-occupancy-model",
        "E{b_j} = √(π/2) − μ(n) versus exhaustive bucket averages",
        "The random model behind b_j is not stated. Exhaustive averaging of bucket 1 at the moment BUCKET stops gives 1.5 at n = 2 against 1.060660; the two agree at n = 4 (1.109375).",
        "The formula is validated against Table 5 only; exhaustive averages are reported as a diagnostic column.",
    ),
    entry(
        "tree-fit-constants",
        "TREE fitted model 1.245754 √n log2 n − 0.273588 versus Table 4",
        "The model predicts 12.81 comparisons at n = 10 where Table 4 shows 6.70; least squares over Table 4 itself gives a slope near 0.59 and an intercept near 0.43.",
        "The evaluator ships the published constants; nothing ties it to Table 4. Fits are computed from data and reported.",
    ),
    entry(
        "bucket-symbol-collision",
        "BUCKET comparisons \"in 1 bucket\"",
        "The symbol C_B is reused from BACKWARD, and it is unclear whether the quantity is per bucket over the whole run or at termination.",
        "Evaluated verbatim as c_bucket_per_bucket; not cross-validated.",
    ),
    entry(
        "input-range",
        "Algorithm inputs \"0 ≤ s_i ≤ n\"",
        "The uniform model draws from 1..n; value 0 has no bucket and no LINEAR cell.",
        "Inputs must lie in 1..n; 0 is rejected as invalid input.",
    ),
    entry(
        "running-time-convention",
        "Expected running-time formulas for LINEAR, BACKWARD and BUCKET",
        "The step-counting convention behind \"running time\" is not specified.",
        "The formulas are exposed as evaluators only and never compared with measured counters.",
    ),
];

pub fn discrepancy_ledger() -> &'static [Discrepancy] {
    LEDGER
}
