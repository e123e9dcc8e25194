//! `inverse_b(f_n)(c0)`: the real inverse of `f_n` restricted to branch `b`.

use alloc::vec::Vec;

use crate::error::Error;
use crate::extrema::{BranchInterval, Endpoint, Extrema};
use crate::laurent::Family;
use crate::roots::newton_bisect;

pub const DEFAULT_TOLERANCE: f64 = 1e-14;
/// Tolerances below this are raised to it.
pub const TOLERANCE_FLOOR: f64 = 1e-15;
pub const MAX_TOLERANCE: f64 = 1e-6;
/// Default `|b|` bound for [`branches_containing`].
pub const DEFAULT_MAX_BRANCH: u64 = 64;

/// The geometric march toward an infinite branch end gives up past this `|x|`.
const MARCH_LIMIT: f64 = 1.2676506002282294e30; // 2^100

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InverseQuery {
    pub family: Family,
    pub order: u32,
    pub branch: i64,
    pub target: f64,
    /// Relative tolerance in `(0, 1e-6]`.
    pub tolerance: f64,
}

impl InverseQuery {
    pub fn new(family: Family, order: u32, branch: i64, target: f64) -> Self {
        InverseQuery {
            family,
            order,
            branch,
            target,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

/// `x` on branch `q.branch` with `f_n(x) = q.target`.
pub fn inverse(q: &InverseQuery) -> Result<f64, Error> {
    let mut ext = Extrema::new(q.family, q.order);
    ext.ensure(ext.needed_for(q.branch));
    inverse_on(&ext, q.branch, q.target, q.tolerance)
}

/// As [`inverse`], reusing precomputed extrema.
pub fn inverse_on(ext: &Extrema, branch: i64, target: f64, tolerance: f64) -> Result<f64, Error> {
    if !(tolerance > 0.0 && tolerance <= MAX_TOLERANCE) {
        return Err(Error::InvalidArgument(alloc::format!(
            "tolerance {} outside (0, 1e-6]",
            tolerance
        )));
    }
    if !target.is_finite() {
        return Err(Error::InvalidArgument("target must be finite".into()));
    }
    let br = ext.branch(branch)?;
    let tol = tolerance.max(TOLERANCE_FLOOR);
    solve_on(ext, &br, target, tol)
}

fn out_of_range(br: &BranchInterval, target: f64) -> Error {
    Error::OutOfRange {
        family: br.family,
        order: br.order,
        branch: br.branch,
        target,
        range: br.range,
    }
}

/// `c` equals a stationary endpoint ordinate up to rounding in the ordinate itself.
fn hits_endpoint(ext: &Extrema, x: f64, value: f64, c: f64) -> bool {
    let slack = 8.0 * f64::EPSILON * ext.function().magnitude(x, 0).max(value.abs());
    (c - value).abs() <= slack
}

fn solve_on(ext: &Extrema, br: &BranchInterval, c: f64, tol: f64) -> Result<f64, Error> {
    let f = ext.function();
    // Stationary endpoints are returned for their own ordinate on either
    // adjacent branch, so the tangent solution of f(x) = max is reachable
    // from both sides.
    if br.left_kind == Endpoint::Stationary && hits_endpoint(ext, br.left, br.left_value, c) {
        return Ok(br.left);
    }
    if br.right_kind == Endpoint::Stationary && hits_endpoint(ext, br.right, br.right_value, c) {
        return Ok(br.right);
    }
    if !br.range.contains(c) {
        return Err(out_of_range(br, c));
    }
    let g = |x: f64| f.raw(x, 0) - c;
    // g < 0 left of the root on an increasing branch
    let root_is_right_of = |x: f64| {
        let v = g(x);
        if br.increasing {
            v < 0.0
        } else {
            v > 0.0
        }
    };

    let seed = match (br.left.is_finite(), br.right.is_finite()) {
        (true, true) => 0.5 * (br.left + br.right),
        (true, false) => br.left + br.left.abs().max(1.0),
        (false, true) => br.right - br.right.abs().max(1.0),
        (false, false) => 0.0,
    };
    if g(seed) == 0.0 {
        return Ok(seed);
    }
    let diverged = || Error::DivergedBracket {
        family: br.family,
        order: br.order,
        branch: br.branch,
        target: c,
    };
    let (a, b) = if root_is_right_of(seed) {
        match br.right_kind {
            Endpoint::Stationary => (seed, br.right),
            Endpoint::Infinite => march_out(seed, 1.0, &root_is_right_of).ok_or_else(diverged)?,
            Endpoint::Pole => march_to_pole(seed, br.right, &root_is_right_of).ok_or_else(diverged)?,
        }
    } else {
        let (near, far) = match br.left_kind {
            Endpoint::Stationary => (seed, br.left),
            Endpoint::Infinite => march_out(seed, -1.0, &root_is_right_of).ok_or_else(diverged)?,
            Endpoint::Pole => march_to_pole(seed, br.left, &root_is_right_of).ok_or_else(diverged)?,
        };
        (far, near)
    };

    let root = newton_bisect(|x| (g(x), f.raw(x, 1)), a, b, tol);
    // return whichever certified point has the smallest residual
    let best = [root.x, root.lo, root.hi]
        .into_iter()
        .filter(|x| br.contains_abscissa(*x) || *x == br.right)
        .min_by(|x, y| g(*x).abs().total_cmp(&g(*y).abs()))
        .unwrap_or(root.x);
    Ok(polish(best, |x| g(x).abs(), |x| br.contains_abscissa(x)))
}

/// Neighbouring floats within `POLISH_ULPS` of `x` with a smaller residual.
const POLISH_ULPS: i64 = 4;

fn polish(x: f64, residual: impl Fn(f64) -> f64, admissible: impl Fn(f64) -> bool) -> f64 {
    let mut best = (x, residual(x));
    for k in -POLISH_ULPS..=POLISH_ULPS {
        let y = ulp_step(x, k);
        if k == 0 || !y.is_finite() || !admissible(y) {
            continue;
        }
        let r = residual(y);
        if r < best.1 {
            best = (y, r);
        }
    }
    best.0
}

/// `x` moved by `k` units in the last place.
fn ulp_step(x: f64, k: i64) -> f64 {
    if x == 0.0 {
        return x;
    }
    let bits = x.to_bits() as i64;
    let moved = if x > 0.0 { bits + k } else { bits - k };
    f64::from_bits(moved as u64)
}

/// Double the step away from `start` until the root is passed; returns the
/// last point short of the root and the first point past it.
fn march_out(start: f64, dir: f64, root_is_right_of: &dyn Fn(f64) -> bool) -> Option<(f64, f64)> {
    let side = root_is_right_of(start);
    let mut step = start.abs().max(1.0);
    let mut near = start;
    loop {
        let x = near + dir * step;
        if x.abs() > MARCH_LIMIT {
            return None;
        }
        if root_is_right_of(x) != side {
            return Some((near, x));
        }
        near = x;
        step *= 2.0;
    }
}

/// Halve the distance to the pole at `pole` until the root is passed.
fn march_to_pole(start: f64, pole: f64, root_is_right_of: &dyn Fn(f64) -> bool) -> Option<(f64, f64)> {
    let side = root_is_right_of(start);
    let mut near = start;
    loop {
        let x = pole + 0.5 * (near - pole);
        if x == near || x == pole {
            return None;
        }
        if root_is_right_of(x) != side {
            return Some((near, x));
        }
        near = x;
    }
}

/// Bound on the branches searched by [`branches_containing`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Limits {
    /// Branches with `|b| <= B`.
    MaxAbsBranch(u64),
    /// Branches meeting `[-X, X]`.
    MaxAbsX(f64),
}

impl Default for Limits {
    fn default() -> Self {
        Limits::MaxAbsBranch(DEFAULT_MAX_BRANCH)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSearch {
    /// Branch indices, ordered by abscissa.
    pub branches: Vec<i64>,
    /// More branches beyond the limits also contain the target.
    pub truncated: bool,
}

/// All branches within `limits` whose ordinate range contains `c0`.
pub fn branches_containing(family: Family, order: u32, c0: f64, limits: Limits) -> BranchSearch {
    let mut ext = Extrema::new(family, order);
    branches_containing_in(&mut ext, c0, limits)
}

/// As [`branches_containing`], growing `ext` as needed.
pub fn branches_containing_in(ext: &mut Extrema, c0: f64, limits: Limits) -> BranchSearch {
    if !c0.is_finite() {
        return BranchSearch {
            branches: Vec::new(),
            truncated: false,
        };
    }
    let contains = |br: &BranchInterval| br.range.contains(c0);
    match ext.family() {
        Family::I | Family::K => {
            let branches = (-1..=1)
                .filter_map(|b| ext.branch(b).ok())
                .filter(contains)
                .map(|br| br.branch)
                .collect();
            BranchSearch {
                branches,
                truncated: false,
            }
        }
        Family::Y | Family::J => {
            let (lo, hi) = oscillating_window(ext, limits);
            let mut branches = Vec::new();
            for b in lo..=hi {
                let br = ext.branch(b).expect("y_n and j_n have every branch");
                if contains(&br) {
                    branches.push(b);
                }
            }
            // |f| at the extrema decreases outward, so a target larger than
            // the outermost extremum ordinates cannot recur further out
            let outer = |m: i64| {
                ext.record(m)
                    .ok()
                    .and_then(|r| r.ordinate.finite())
                    .map_or(f64::INFINITY, f64::abs)
            };
            let truncated = c0 == 0.0 || c0.abs() <= outer(hi) || c0.abs() <= outer(lo - 1);
            BranchSearch { branches, truncated }
        }
    }
}

/// Inclusive branch range for `y_n`/`j_n` under `limits`.
fn oscillating_window(ext: &mut Extrema, limits: Limits) -> (i64, i64) {
    match limits {
        Limits::MaxAbsBranch(b) => {
            let b = b as i64;
            ext.ensure(b as usize + 2);
            (-b, b)
        }
        Limits::MaxAbsX(x) => {
            let x = x.abs();
            // branches meeting [-x, x]: walk out until the branch starts beyond x
            let mut hi = 1i64;
            loop {
                ext.ensure(hi as usize + 2);
                let br = ext.branch(hi).expect("branch exists");
                if br.right >= x {
                    break;
                }
                hi += 1;
            }
            let mut lo = 0i64;
            loop {
                ext.ensure(lo.unsigned_abs() as usize + 2);
                let br = ext.branch(lo).expect("branch exists");
                if br.left <= -x {
                    break;
                }
                lo -= 1;
            }
            (lo, hi)
        }
    }
}

/// Leftmost `x` on branch `b` with `f_n(x) = x`; a fixed point of
/// `inverse_b(f_n)` as well.
pub fn fixed_point_check(family: Family, order: u32, b: i64) -> Result<f64, Error> {
    let mut ext = Extrema::new(family, order);
    ext.ensure(ext.needed_for(b));
    let br = ext.branch(b)?;
    let f = ext.function();
    let h = |x: f64| f.raw(x, 0) - x;
    // |f_n(x)| = |x| is impossible far out: y, j decay and i, k grow exponentially
    const REACH: f64 = 64.0;
    let end = |x: f64, kind: Endpoint, left: bool| match kind {
        Endpoint::Infinite => {
            if left {
                -REACH.max(br.right.abs() + REACH)
            } else {
                REACH.max(br.left.abs() + REACH)
            }
        }
        Endpoint::Pole => {
            if left {
                x + 1e-12
            } else {
                x - 1e-12
            }
        }
        Endpoint::Stationary => x,
    };
    let a = end(br.left, br.left_kind, true);
    let z = end(br.right, br.right_kind, false);
    const SAMPLES: usize = 4096;
    let mut prev_x = a;
    let mut prev_h = h(a);
    if prev_h == 0.0 && br.contains_abscissa(a) {
        return Ok(a);
    }
    for i in 1..=SAMPLES {
        let t = i as f64 / SAMPLES as f64;
        let x = a + (z - a) * t;
        let hx = h(x);
        if hx == 0.0 {
            return Ok(x);
        }
        if prev_h.is_finite() && hx.is_finite() && prev_h.signum() != hx.signum() {
            let r = newton_bisect(|x| (h(x), f.raw(x, 1) - 1.0), prev_x, x, TOLERANCE_FLOOR);
            return Ok(r.x);
        }
        prev_x = x;
        prev_h = hx;
    }
    Err(Error::NoFixedPoint {
        family,
        order,
        branch: b,
    })
}
