use std::str::FromStr;

/// Inclusive integer range written `a` or `a:b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn values(self) -> Vec<u64> {
        (self.lo..=self.hi).collect()
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("{t:?} is not a non-negative integer"))
        };
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (num(a)?, num(b)?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!(
            "3:8".parse::<Span>().unwrap().values(),
            vec![3, 4, 5, 6, 7, 8]
        );
        assert_eq!("2".parse::<Span>().unwrap().values(), vec![2]);
        assert!("5:2".parse::<Span>().is_err());
        assert!("a:2".parse::<Span>().is_err());
    }
}
