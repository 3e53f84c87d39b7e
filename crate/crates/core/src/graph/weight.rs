use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

/// Fixed-point edge weight with six decimal places.
///
/// Weights are exact so that equal decimal inputs compare equal; remaining
/// ties are broken by edge rank wherever an order on edges is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(u64);

const SCALE: u64 = 1_000_000;
const FRACTION_DIGITS: usize = 6;

impl Weight {
    pub const ONE: Weight = Weight(SCALE);
    pub const ZERO: Weight = Weight(0);

    pub fn from_int(w: u64) -> Self {
        Weight(w * SCALE)
    }

    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / SCALE as f64
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, Add::add)
    }
}

impl FromStr for Weight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid weight `{s}`"));
        }
        if !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid weight `{s}`"));
        }
        if frac.len() > FRACTION_DIGITS {
            return Err(format!(
                "weight `{s}` has more than {FRACTION_DIGITS} decimal places"
            ));
        }
        let int: u64 = int.parse().map_err(|_| format!("weight `{s}` out of range"))?;
        let mut frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().unwrap() };
        for _ in frac.len()..FRACTION_DIGITS {
            frac_val *= 10;
        }
        int.checked_mul(SCALE)
            .and_then(|v| v.checked_add(frac_val))
            .map(Weight)
            .ok_or_else(|| format!("weight `{s}` out of range"))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / SCALE;
        let frac = self.0 % SCALE;
        if frac == 0 {
            return write!(f, "{int}");
        }
        let digits = format!("{frac:06}");
        write!(f, "{int}.{}", digits.trim_end_matches('0'))
    }
}
