use std::fmt;

pub const DEFAULT_START: u32 = 4;
pub const DEFAULT_MAX: u32 = 64;

/// Truncation bounds tried in turn: `start, 2·start, ...` while `<= max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub start: u32,
    pub max: u32,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { start: DEFAULT_START, max: DEFAULT_MAX }
    }
}

impl Schedule {
    /// Default schedule with the ceiling taken from `MFCAT_TRUNCATION_MAX` when set.
    pub fn from_env() -> Self {
        let max = std::env::var("MFCAT_TRUNCATION_MAX")
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|&v| v >= 1)
            .unwrap_or(DEFAULT_MAX);
        Schedule { start: DEFAULT_START.min(max), max }
    }

    pub fn bounds(&self) -> Vec<u32> {
        let mut out = vec![];
        let mut b = self.start.max(1);
        while b <= self.max {
            out.push(b);
            b = b.saturating_mul(2);
        }
        out
    }

    /// Evaluates `f` along the schedule until two consecutive bounds agree.
    pub fn run(&self, f: impl Fn(u32) -> usize) -> Stable {
        let mut prev: Option<(u32, usize)> = None;
        for b in self.bounds() {
            let v = f(b);
            if let Some((pb, pv)) = prev {
                if pv == v {
                    return Stable { dim: v, stable: true, bound: Some(pb) };
                }
            }
            prev = Some((b, v));
        }
        match prev {
            Some((b, v)) => Stable { dim: v, stable: false, bound: Some(b) },
            None => Stable { dim: 0, stable: false, bound: None },
        }
    }
}

/// A dimension together with its stabilization evidence.
///
/// `bound` is the smaller of the two agreeing truncation bounds, the last
/// bound tried when unstable, and `None` when no truncation was involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stable {
    pub dim: usize,
    pub stable: bool,
    pub bound: Option<u32>,
}

impl Stable {
    pub fn exact(dim: usize) -> Self {
        Stable { dim, stable: true, bound: None }
    }
}

impl fmt::Display for Stable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stable {
            write!(f, "{}", self.dim)
        } else {
            write!(f, "{}?", self.dim)
        }
    }
}
