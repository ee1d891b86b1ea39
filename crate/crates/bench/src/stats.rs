use std::fmt;

use crate::CaseReport;

/// A percentage held as an integer number of tenths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent(pub i64);

impl Percent {
    pub fn tenths(self) -> i64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 10.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{sign}{}.{}", abs / 10, abs % 10)
    }
}

/// `(1 - size / baseline) * 100` to one decimal, ties to even.
///
/// Computed on exact integers, so ties are real ties. A zero baseline
/// yields zero.
pub fn reduction(size: u64, baseline: u64) -> Percent {
    if baseline == 0 {
        return Percent(0);
    }
    let num = (i128::from(baseline) - i128::from(size)) * 1000;
    Percent(round_half_even(num, i128::from(baseline)) as i64)
}

fn round_half_even(num: i128, den: i128) -> i128 {
    let q = num.div_euclid(den);
    let twice_rem = 2 * num.rem_euclid(den);
    if twice_rem > den || (twice_rem == den && q % 2 != 0) {
        q + 1
    } else {
        q
    }
}

/// Distribution of one mode's reductions across a corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSummary {
    pub maximum: f64,
    pub minimum: f64,
    pub range: f64,
    pub median: f64,
    pub average: f64,
    pub negatives: usize,
    pub total: usize,
}

impl ModeSummary {
    /// Summarizes percentages given directly, e.g. published figures.
    pub fn from_reductions(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
        };
        let (minimum, maximum) = (sorted[0], sorted[n - 1]);
        Some(ModeSummary {
            maximum,
            minimum,
            range: maximum - minimum,
            median,
            average: sorted.iter().sum::<f64>() / n as f64,
            negatives: sorted.iter().filter(|v| **v < 0.0).count(),
            total: n,
        })
    }
}

/// Reductions against minified JSON for both binary modes.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub schema_driven: ModeSummary,
    pub schema_less: ModeSummary,
}

pub fn summarize(reports: &[CaseReport]) -> Option<Summary> {
    let driven: Vec<f64> = reports.iter().map(|r| r.driven_vs_json().as_f64()).collect();
    let less: Vec<f64> = reports.iter().map(|r| r.less_vs_json().as_f64()).collect();
    Some(Summary {
        schema_driven: ModeSummary::from_reductions(&driven)?,
        schema_less: ModeSummary::from_reductions(&less)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ties_go_to_even() {
        // 1 - 1/16 = 93.75% -> 93.8 ; 1 - 3/16 = 81.25% -> 81.2
        assert_eq!(reduction(1, 16), Percent(938));
        assert_eq!(reduction(3, 16), Percent(812));
        assert_eq!(reduction(0, 7), Percent(1000));
        assert_eq!(reduction(7, 7), Percent(0));
    }

    #[test]
    fn growth_is_negative() {
        assert_eq!(reduction(33, 14), Percent(-1357));
        assert_eq!(Percent(-1357).to_string(), "-135.7");
        assert_eq!(Percent(-5).to_string(), "-0.5");
        assert_eq!(Percent(5).to_string(), "0.5");
    }

    #[test]
    fn median_of_even_count_is_mean_of_middle() {
        let s = ModeSummary::from_reductions(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(s.median, 2.5);
        assert_eq!(s.range, 3.0);
        assert_eq!(s.average, 2.5);
        assert!(ModeSummary::from_reductions(&[]).is_none());
    }

    #[test]
    fn counts_negatives() {
        let s = ModeSummary::from_reductions(&[-1.0, 0.0, 5.5]).unwrap();
        assert_eq!(s.negatives, 1);
        assert_eq!(s.median, 0.0);
    }
}
