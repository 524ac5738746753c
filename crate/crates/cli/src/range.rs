use std::str::FromStr;

use repfree_core::Error;

/// A list of `n` values given as `a..b` (inclusive), `a,b,c` or `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRange(pub Vec<usize>);

const MAX_VALUES: usize = 1_000_000;

impl FromStr for NRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::InvalidParameter(format!("malformed range `{s}`: {why}"));
        let num = |t: &str| -> Result<usize, Error> {
            let v: usize = t
                .trim()
                .parse()
                .map_err(|_| bad("expected a positive integer"))?;
            if v == 0 {
                return Err(bad("n must be at least 1"));
            }
            Ok(v)
        };
        let values = if let Some((lo, hi)) = s.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(bad("empty range"));
            }
            if hi - lo >= MAX_VALUES {
                return Err(bad("too many values"));
            }
            (lo..=hi).collect()
        } else {
            s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
        };
        Ok(NRange(values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!("1..4".parse::<NRange>().unwrap().0, vec![1, 2, 3, 4]);
        assert_eq!("2..=3".parse::<NRange>().unwrap().0, vec![2, 3]);
        assert_eq!("5, 10,15".parse::<NRange>().unwrap().0, vec![5, 10, 15]);
        assert_eq!("7".parse::<NRange>().unwrap().0, vec![7]);
        for bad in ["", "0", "3..1", "a..4", "1..", "1,,2", "-1"] {
            assert!(bad.parse::<NRange>().is_err(), "{bad}");
        }
    }
}
