use std::cmp::Ordering;
use std::fmt;

/// Rule weight: the infinite weight `alpha` or a finite real.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    Hard,
    Soft(f64),
}

impl Weight {
    pub fn is_hard(&self) -> bool {
        matches!(self, Weight::Hard)
    }

    pub fn soft_value(&self) -> f64 {
        match self {
            Weight::Hard => 0.0,
            Weight::Soft(w) => *w,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Hard => f.write_str("alpha"),
            Weight::Soft(w) => write!(f, "{w:?}"),
        }
    }
}

/// `exp(hard * alpha + soft)`, or the distinguished zero weight.
///
/// Ordering follows the limit `alpha -> infinity`: the hard count dominates,
/// the soft exponent breaks ties, and zero sits below everything.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SymbolicWeight {
    Zero,
    Exp { hard: u64, soft: f64 },
}

impl SymbolicWeight {
    pub fn new(hard: u64, soft: f64) -> Self {
        SymbolicWeight::Exp { hard, soft }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SymbolicWeight::Zero)
    }

    pub fn hard(&self) -> Option<u64> {
        match self {
            SymbolicWeight::Zero => None,
            SymbolicWeight::Exp { hard, .. } => Some(*hard),
        }
    }

    pub fn soft(&self) -> Option<f64> {
        match self {
            SymbolicWeight::Zero => None,
            SymbolicWeight::Exp { soft, .. } => Some(*soft),
        }
    }
}

pub fn compare_weights(x: &SymbolicWeight, y: &SymbolicWeight) -> Ordering {
    match (x, y) {
        (SymbolicWeight::Zero, SymbolicWeight::Zero) => Ordering::Equal,
        (SymbolicWeight::Zero, _) => Ordering::Less,
        (_, SymbolicWeight::Zero) => Ordering::Greater,
        (SymbolicWeight::Exp { hard: h1, soft: s1 }, SymbolicWeight::Exp { hard: h2, soft: s2 }) => {
            h1.cmp(h2).then_with(|| s1.total_cmp(s2))
        }
    }
}

impl Eq for SymbolicWeight {}

impl PartialOrd for SymbolicWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SymbolicWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_weights(self, other)
    }
}

/// Renders as `0`, `e^{3a}`, `e^{3a+2}`, `e^{2}` in the style of a weight table.
impl fmt::Display for SymbolicWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SymbolicWeight::Zero => f.write_str("0"),
            SymbolicWeight::Exp { hard, soft } => {
                let soft_str = format_exponent(soft);
                match (hard, soft == 0.0) {
                    (0, _) => write!(f, "e^{{{soft_str}}}"),
                    (h, true) => write!(f, "e^{{{h}a}}"),
                    (h, false) if soft < 0.0 => write!(f, "e^{{{h}a{soft_str}}}"),
                    (h, false) => write!(f, "e^{{{h}a+{soft_str}}}"),
                }
            }
        }
    }
}

fn format_exponent(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.6}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hard_tier_dominates() {
        assert_eq!(
            compare_weights(&SymbolicWeight::new(3, 0.0), &SymbolicWeight::new(2, 100.0)),
            Ordering::Greater
        );
        assert_eq!(
            compare_weights(&SymbolicWeight::new(2, 2.0), &SymbolicWeight::new(2, 1.0)),
            Ordering::Greater
        );
        assert_eq!(
            compare_weights(&SymbolicWeight::Zero, &SymbolicWeight::new(0, -50.0)),
            Ordering::Less
        );
    }

    #[test]
    fn display_matches_table_notation() {
        assert_eq!(SymbolicWeight::new(4, 0.0).to_string(), "e^{4a}");
        assert_eq!(SymbolicWeight::new(3, 2.0).to_string(), "e^{3a+2}");
        assert_eq!(SymbolicWeight::new(0, 3.0).to_string(), "e^{3}");
        assert_eq!(SymbolicWeight::Zero.to_string(), "0");
    }
}
