//! Local infima/suprema ("infsupums") and the monotonic branches they bound.
//!
//! Numbering: the record with the least positive abscissa is `m = 1`, later
//! ones `2, 3, ...` to the right and `0, -1, ...` to the left. Branch `b` is
//! the interval `[x_{b-1}, x_b)`; a missing record on either side means the
//! branch runs to `-inf` / `+inf`.
//!
//! | family | records | branches |
//! |---|---|---|
//! | `y_n` | pole at `m = 0`, `x_{-m} = -x_m` | all `b` |
//! | `j_n`, even `n` | stationary at `m = 0` (`x = 0`) | all `b` |
//! | `j_n`, odd `n` | `x_m` for `m >= 1`, `x_m = -x_{1-m}` for `m <= 0` | all `b` |
//! | `i_n`, even `n` | `m = 0` at `x = 0` | `0, 1` |
//! | `i_n`, odd `n` | none | `1` |
//! | `k_n`, odd `n` | pole at `m = 0` | `0, 1` |
//! | `k_n`, even `n` | `m = -1` (negative maximum), pole at `m = 0` | `-1, 0, 1` |

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::bessel::{Direction, SphericalBessel};
use crate::error::Error;
use crate::laurent::Family;
use crate::math;
use crate::roots::newton_bisect;

/// Relative tolerance for refining stationary abscissas.
const REFINE_TOL: f64 = 1e-15;

/// Ordinate of a record: a finite value, or the two one-sided limits at a pole.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ordinate {
    Finite(f64),
    Pole { from_below: f64, from_above: f64 },
}

impl Ordinate {
    pub fn finite(self) -> Option<f64> {
        match self {
            Ordinate::Finite(v) => Some(v),
            Ordinate::Pole { .. } => None,
        }
    }
}

impl fmt::Display for Ordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinate::Finite(v) => write!(f, "{}", v),
            Ordinate::Pole { from_below, from_above } => {
                write!(f, "pole ({} from below, {} from above)", from_below, from_above)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecordKind {
    Stationary,
    Pole,
}

/// One infsupum of `f_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremumRecord {
    pub family: Family,
    pub order: u32,
    pub index: i64,
    pub abscissa: f64,
    pub ordinate: Ordinate,
    pub kind: RecordKind,
}

/// What terminates a branch on one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Stationary,
    Pole,
    Infinite,
}

/// Interval of ordinates; infinite ends are stored as `±inf` and are never closed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrdinateRange {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl OrdinateRange {
    pub fn contains(&self, c: f64) -> bool {
        let above = if self.lo_closed { c >= self.lo } else { c > self.lo };
        let below = if self.hi_closed { c <= self.hi } else { c < self.hi };
        above && below
    }

    /// `c` lies in the closure of the range (finite ends only).
    pub fn contains_closure(&self, c: f64) -> bool {
        c.is_finite() && c >= self.lo && c <= self.hi
    }
}

impl fmt::Display for OrdinateRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{}{}, {}{}", open, self.lo, self.hi, close)
    }
}

/// A maximally monotonic interval of `f_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchInterval {
    pub family: Family,
    pub order: u32,
    pub branch: i64,
    pub left: f64,
    pub right: f64,
    pub left_kind: Endpoint,
    pub right_kind: Endpoint,
    pub left_closed: bool,
    pub right_closed: bool,
    /// Value (or one-sided limit) of `f_n` at the left end.
    pub left_value: f64,
    /// Value (or one-sided limit) of `f_n` at the right end.
    pub right_value: f64,
    pub increasing: bool,
    pub range: OrdinateRange,
}

impl BranchInterval {
    /// Whether `x` lies in the branch, honouring endpoint inclusion.
    pub fn contains_abscissa(&self, x: f64) -> bool {
        let l = if self.left_closed {
            x >= self.left
        } else {
            x > self.left
        };
        let r = if self.right_closed {
            x <= self.right
        } else {
            x < self.right
        };
        l && r
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Site {
    Pole,
    Stationary(f64),
}

/// Extrema of one `f_n`: the positive stationary abscissas found so far plus
/// the records at or left of the origin that are not mirror images.
#[derive(Clone, Debug)]
pub struct Extrema {
    f: SphericalBessel,
    positive: Vec<f64>,
    /// Negative stationary point of `k_n`, even `n`.
    negative: Option<f64>,
}

impl Extrema {
    pub fn new(family: Family, order: u32) -> Self {
        Self::with_positive_count(family, order, 4)
    }

    /// Precompute the first `count` positive stationary abscissas (`y_n`, `j_n`).
    pub fn with_positive_count(family: Family, order: u32, count: usize) -> Self {
        let f = SphericalBessel::new(family, order);
        let negative = if family == Family::K && !math::is_odd(order) {
            Some(k_negative_stationary(&f))
        } else {
            None
        };
        let mut e = Extrema {
            f,
            positive: Vec::new(),
            negative,
        };
        e.ensure(count);
        e
    }

    pub fn family(&self) -> Family {
        self.f.family()
    }

    pub fn order(&self) -> u32 {
        self.f.order()
    }

    pub fn function(&self) -> &SphericalBessel {
        &self.f
    }

    /// Number of positive stationary abscissas currently stored.
    pub fn positive_len(&self) -> usize {
        self.positive.len()
    }

    fn oscillates(&self) -> bool {
        matches!(self.family(), Family::Y | Family::J)
    }

    /// Store at least `count` positive stationary abscissas.
    pub fn ensure(&mut self, count: usize) {
        if !self.oscillates() || self.positive.len() >= count {
            return;
        }
        let more = scan_positive(&self.f, self.positive.last().copied(), count - self.positive.len());
        self.positive.extend(more);
    }

    /// Number of positive stationary abscissas needed to address record `m`
    /// and branch `b = m`, `b = m + 1`.
    pub fn needed_for(&self, m: i64) -> usize {
        let k = m.unsigned_abs() as usize;
        k + 2
    }

    /// `k`-th positive stationary abscissa (0-based), scanning past the
    /// stored ones without memoizing when necessary.
    fn positive_at(&self, k: usize) -> f64 {
        if let Some(&x) = self.positive.get(k) {
            return x;
        }
        let need = k + 1 - self.positive.len();
        let more = scan_positive(&self.f, self.positive.last().copied(), need);
        more[need - 1]
    }

    fn site(&self, m: i64) -> Option<Site> {
        let n = self.order();
        let even = !math::is_odd(n);
        let pos = |k: i64| self.positive_at(k as usize);
        match self.family() {
            Family::Y => Some(match m {
                0 => Site::Pole,
                m if m > 0 => Site::Stationary(pos(m - 1)),
                m => Site::Stationary(-pos(-m - 1)),
            }),
            Family::J if even => Some(match m {
                0 => Site::Stationary(0.0),
                m if m > 0 => Site::Stationary(pos(m - 1)),
                m => Site::Stationary(-pos(-m - 1)),
            }),
            Family::J => Some(if m > 0 {
                Site::Stationary(pos(m - 1))
            } else {
                Site::Stationary(-pos(-m))
            }),
            Family::I => (even && m == 0).then_some(Site::Stationary(0.0)),
            Family::K => match m {
                0 => Some(Site::Pole),
                -1 => self.negative.map(Site::Stationary),
                _ => None,
            },
        }
    }

    fn site_value(&self, x: f64) -> f64 {
        self.f.raw(x, 0)
    }

    /// The infsupum numbered `m`.
    pub fn record(&self, m: i64) -> Result<ExtremumRecord, Error> {
        let site = self.site(m).ok_or(Error::NoSuchExtremum {
            family: self.family(),
            order: self.order(),
            index: m,
        })?;
        let (abscissa, ordinate, kind) = match site {
            Site::Pole => (
                0.0,
                Ordinate::Pole {
                    from_below: self.f.pole_limit(0, Direction::FromBelow),
                    from_above: self.f.pole_limit(0, Direction::FromAbove),
                },
                RecordKind::Pole,
            ),
            Site::Stationary(x) => (x, Ordinate::Finite(self.site_value(x)), RecordKind::Stationary),
        };
        Ok(ExtremumRecord {
            family: self.family(),
            order: self.order(),
            index: m,
            abscissa,
            ordinate,
            kind,
        })
    }

    pub fn has_branch(&self, b: i64) -> bool {
        let odd = math::is_odd(self.order());
        match self.family() {
            Family::Y | Family::J => true,
            Family::I => b == 1 || (!odd && b == 0),
            Family::K => b == 0 || b == 1 || (!odd && b == -1),
        }
    }

    /// Limit of `f_n` at `-inf` (`right = false`) or `+inf` (`right = true`).
    fn limit_at_infinity(&self, right: bool) -> f64 {
        let n = self.order();
        match (self.family(), right) {
            (Family::Y | Family::J, _) => 0.0,
            (Family::I, true) => f64::INFINITY,
            (Family::I, false) => math::neg_one_pow(n) * f64::INFINITY,
            (Family::K, true) => 0.0,
            (Family::K, false) => f64::NEG_INFINITY,
        }
    }

    /// Branch `b`: `[x_{b-1}, x_b)`.
    pub fn branch(&self, b: i64) -> Result<BranchInterval, Error> {
        if !self.has_branch(b) {
            return Err(Error::NoSuchBranch {
                family: self.family(),
                order: self.order(),
                branch: b,
            });
        }
        let end = |m: i64, is_left: bool| -> (f64, Endpoint, f64) {
            match self.site(m) {
                Some(Site::Stationary(x)) => (x, Endpoint::Stationary, self.site_value(x)),
                Some(Site::Pole) => {
                    let dir = if is_left {
                        Direction::FromAbove
                    } else {
                        Direction::FromBelow
                    };
                    (0.0, Endpoint::Pole, self.f.pole_limit(0, dir))
                }
                None if is_left => (f64::NEG_INFINITY, Endpoint::Infinite, self.limit_at_infinity(false)),
                None => (f64::INFINITY, Endpoint::Infinite, self.limit_at_infinity(true)),
            }
        };
        let (left, left_kind, left_value) = end(b - 1, true);
        let (right, right_kind, right_value) = end(b, false);
        let left_closed = left_kind == Endpoint::Stationary;
        // the rightmost branch always ends at +inf, which is never attained
        let right_closed = false;
        let increasing = right_value > left_value;
        let range = if increasing {
            OrdinateRange {
                lo: left_value,
                hi: right_value,
                lo_closed: left_closed,
                hi_closed: right_closed,
            }
        } else {
            OrdinateRange {
                lo: right_value,
                hi: left_value,
                lo_closed: right_closed,
                hi_closed: left_closed,
            }
        };
        Ok(BranchInterval {
            family: self.family(),
            order: self.order(),
            branch: b,
            left,
            right,
            left_kind,
            right_kind,
            left_closed,
            right_closed,
            left_value,
            right_value,
            increasing,
            range,
        })
    }

    /// The branch containing abscissa `x` (`None` at a pole).
    pub fn branch_of(&self, x: f64) -> Option<i64> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 && self.family().has_pole() {
            return None;
        }
        let candidates: Vec<i64> = match self.family() {
            Family::Y | Family::J => {
                // guess from the asymptotic spacing, then walk
                let mut b = libm::round(x / PI) as i64;
                for _ in 0..100_000 {
                    let br = self.branch(b).ok()?;
                    if br.contains_abscissa(x) {
                        return Some(b);
                    }
                    b += if x < br.left { -1 } else { 1 };
                }
                return None;
            }
            Family::I | Family::K => [-1, 0, 1].into_iter().filter(|&b| self.has_branch(b)).collect(),
        };
        candidates
            .into_iter()
            .find(|&b| self.branch(b).is_ok_and(|br| br.contains_abscissa(x)))
    }
}

/// Sign changes of `f'` on the grid `pi/16 + k pi/8`, refined on `f''`.
fn scan_positive(f: &SphericalBessel, after: Option<f64>, count: usize) -> Vec<f64> {
    let step = PI / 8.0;
    let start = after.unwrap_or(0.0);
    let mut k = match after {
        None => 0u64,
        // resume at the first grid point strictly past `after`
        Some(x) => libm::floor((x - PI / 16.0) / step).max(0.0) as u64 + 1,
    };
    let grid = |k: u64| PI / 16.0 + step * k as f64;
    let mut out = Vec::with_capacity(count);
    let mut a = grid(k);
    while a <= start {
        k += 1;
        a = grid(k);
    }
    let mut da = f.raw(a, 1);
    while out.len() < count {
        k += 1;
        let b = grid(k);
        let db = f.raw(b, 1);
        if da == 0.0 {
            out.push(a);
        } else if da.signum() != db.signum() && db != 0.0 {
            out.push(refine(f, a, b));
        }
        a = b;
        da = db;
    }
    out
}

fn refine(f: &SphericalBessel, a: f64, b: f64) -> f64 {
    newton_bisect(|x| (f.raw(x, 1), f.raw(x, 2)), a, b, REFINE_TOL).x
}

/// The single negative stationary point of `k_n` for even `n`.
///
/// `k_n' > 0` far to the left (`k_n ~ e^{-x}/x`) and `k_n' < 0` just left of
/// the pole, so the window is widened geometrically on both sides.
fn k_negative_stationary(f: &SphericalBessel) -> f64 {
    let mut left = -1.0;
    while f.raw(left, 1) <= 0.0 {
        left *= 2.0;
    }
    let mut right = -1.0;
    while f.raw(right, 1) > 0.0 {
        right *= 0.5;
    }
    refine(f, left, right)
}

/// The infsupum numbered `m` of `f_n`.
pub fn infsupum(family: Family, order: u32, m: i64) -> Result<ExtremumRecord, Error> {
    let e = Extrema::new(family, order);
    let mut e = e;
    e.ensure(e.needed_for(m));
    e.record(m)
}

/// Branch `b` of `f_n`.
pub fn branch_interval(family: Family, order: u32, b: i64) -> Result<BranchInterval, Error> {
    let mut e = Extrema::new(family, order);
    e.ensure(e.needed_for(b));
    e.branch(b)
}
