//! Proper times along piecewise radial paths and the proper-time matching
//! schedule for the two branches of agent A.
//!
//! Branch `A<B` climbs to `R + h` at `t0` and waits there until the target
//! crosses it at `t3`. Branch `B<A` waits at the surface for `dt_r`, climbs in
//! the same way, and is crossed at `t4 = t3 + dt_c`. The ascent contributes
//! the same proper time to both branches, so matching reduces to
//!
//! ```text
//! (sqrt(1 - R_S/(R+h)) - sqrt(1 - R_S/R)) * dt_r = sqrt(1 - R_S/(R+h)) * dt_c
//! ```

use crate::error::{domain, Result};
use crate::quadrature;
use crate::spacetime::{dilation_difference, dilation_factor, CentralBody};

/// Relative tolerance for quadrature over non-constant radius segments.
pub const QUADRATURE_REL_TOL: f64 = 1e-13;

/// Default factor used to operationalise "much less than".
pub const DEFAULT_FEASIBILITY_FACTOR: f64 = 10.0;

/// One piece of a radial worldline. The horizontal motion is irrelevant for
/// proper time in a static spherically symmetric field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Hold { radius: f64, duration: f64 },
    /// Radius changes linearly in coordinate time.
    LinearAscent { r_start: f64, r_end: f64, duration: f64 },
}

impl Segment {
    pub fn duration(&self) -> f64 {
        match *self {
            Segment::Hold { duration, .. } | Segment::LinearAscent { duration, .. } => duration,
        }
    }

    fn start_radius(&self) -> f64 {
        match *self {
            Segment::Hold { radius, .. } => radius,
            Segment::LinearAscent { r_start, .. } => r_start,
        }
    }

    fn rate(&self) -> f64 {
        match *self {
            Segment::Hold { .. } => 0.0,
            Segment::LinearAscent { r_start, r_end, duration } => (r_end - r_start) / duration,
        }
    }
}

/// A contiguous sequence of segments starting at coordinate time zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PathProfile {
    segments: Vec<Segment>,
    total: f64,
}

impl PathProfile {
    pub fn new(segments: Vec<Segment>, body: &CentralBody) -> Result<Self> {
        if segments.is_empty() {
            return domain("path has no segments");
        }
        let rs = body.schwarzschild_radius();
        for (i, seg) in segments.iter().enumerate() {
            let d = seg.duration();
            if !(d.is_finite() && d > 0.0) {
                return domain(format!("segment {i} has non-positive duration {d}"));
            }
            let radii: &[f64] = match seg {
                Segment::Hold { radius, .. } => &[*radius],
                Segment::LinearAscent { r_start, r_end, .. } => &[*r_start, *r_end],
            };
            if radii.iter().any(|&r| r.is_nan() || r <= rs || r.is_infinite() && seg.rate() != 0.0) {
                return domain(format!("segment {i} leaves the exterior region r > R_S"));
            }
        }
        let total = segments.iter().map(Segment::duration).sum();
        Ok(PathProfile { segments, total })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_duration(&self) -> f64 {
        self.total
    }

    fn end(&self) -> Instant {
        self.segments.iter().fold(Instant::ZERO, |t, s| t.add(s.duration()))
    }

    /// Affine pieces of `r(t)` between consecutive breakpoints in `cuts`.
    fn pieces(&self, cuts: &[Instant]) -> Vec<Piece> {
        let mut out = Vec::with_capacity(cuts.len());
        let mut seg_start = Instant::ZERO;
        let mut k = 0;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            while k + 1 < self.segments.len() && seg_start.add(self.segments[k].duration()) <= a {
                seg_start = seg_start.add(self.segments[k].duration());
                k += 1;
            }
            let seg = &self.segments[k];
            let rate = seg.rate();
            let r0 = seg.start_radius() + rate * a.since(seg_start);
            out.push(Piece { r0, rate, duration: b.since(a) });
        }
        out
    }

    fn breakpoints(&self) -> Vec<Instant> {
        let mut t = Instant::ZERO;
        let mut v = vec![t];
        for s in &self.segments {
            t = t.add(s.duration());
            v.push(t);
        }
        v
    }
}

/// Coordinate time kept as an unevaluated sum `hi + lo`, so that a 1e-15 s
/// transit stays resolvable against a run lasting seconds.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
struct Instant {
    hi: f64,
    lo: f64,
}

impl Instant {
    const ZERO: Instant = Instant { hi: 0.0, lo: 0.0 };

    fn add(self, dt: f64) -> Instant {
        // two-sum of hi + dt, then renormalise with the carried low part
        let s = self.hi + dt;
        let bb = s - self.hi;
        let err = (self.hi - (s - bb)) + (dt - bb);
        let lo = err + self.lo;
        let hi = s + lo;
        Instant { hi, lo: lo - (hi - s) }
    }

    fn since(self, earlier: Instant) -> f64 {
        (self.hi - earlier.hi) + (self.lo - earlier.lo)
    }
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    r0: f64,
    rate: f64,
    duration: f64,
}

impl Piece {
    fn radius(&self, u: f64) -> f64 {
        self.r0 + self.rate * u
    }

    fn proper_time(&self, body: &CentralBody) -> f64 {
        if self.rate == 0.0 {
            return dilation_factor(self.r0, body).expect("validated radius") * self.duration;
        }
        let rs = body.schwarzschild_radius();
        quadrature::integrate(
            |u| (1.0 - rs / self.radius(u)).sqrt(),
            0.0,
            self.duration,
            QUADRATURE_REL_TOL,
            0.0,
        )
        .value
    }
}

/// `sqrt(1 - R_S/x) - sqrt(1 - R_S/y)` for arbitrary order, cancellation-safe.
fn signed_rate_difference(x: f64, y: f64, body: &CentralBody) -> f64 {
    if x >= y {
        dilation_difference(x, y, body).expect("validated radius")
    } else {
        -dilation_difference(y, x, body).expect("validated radius")
    }
}

fn piece_difference(a: &Piece, b: &Piece, body: &CentralBody) -> f64 {
    if a.rate == 0.0 && b.rate == 0.0 {
        return signed_rate_difference(a.r0, b.r0, body) * a.duration;
    }
    if a.r0 == b.r0 && a.rate == b.rate {
        return 0.0;
    }
    let rs = body.schwarzschild_radius();
    let gap0 = a.r0 - b.r0;
    let gap_rate = a.rate - b.rate;
    let integrand = |u: f64| {
        let (x, y) = (a.radius(u), b.radius(u));
        let sx = (1.0 - rs / x).sqrt();
        let sy = (1.0 - rs / y).sqrt();
        (rs / x) * ((gap0 + gap_rate * u) / y) / (sx + sy)
    };
    quadrature::integrate(integrand, 0.0, a.duration, QUADRATURE_REL_TOL, 1e-300).value
}

/// Proper time `int sqrt(1 - R_S/r(t)) dt` along a path.
pub fn proper_time(path: &PathProfile, body: &CentralBody) -> f64 {
    path.pieces(&path.breakpoints())
        .iter()
        .map(|p| p.proper_time(body))
        .sum()
}

/// `tau(a) - tau(b)` for paths of equal coordinate duration, positive when
/// `a` spends its time higher.
///
/// The two worldlines are compared on a common time grid and each aligned
/// pair of pieces contributes a cancellation-safe difference, so radii a
/// metre apart near Earth resolve to full relative precision.
pub fn proper_time_difference(a: &PathProfile, b: &PathProfile, body: &CentralBody) -> Result<f64> {
    let (ta, tb) = (a.total_duration(), b.total_duration());
    if (ta - tb).abs() > 1e-12 * ta.max(tb) {
        return domain(format!("paths have different coordinate durations ({ta} s vs {tb} s)"));
    }
    Ok(proper_time_gap(a, b, body))
}

/// Like [`proper_time_difference`] but accepts paths of different duration;
/// the unmatched tail of the longer path contributes its own proper time.
pub fn proper_time_gap(a: &PathProfile, b: &PathProfile, body: &CentralBody) -> f64 {
    let (end_a, end_b) = (a.end(), b.end());
    let common = if end_a <= end_b { end_a } else { end_b };
    let mut cuts: Vec<Instant> = a
        .breakpoints()
        .into_iter()
        .chain(b.breakpoints())
        .filter(|&t| t < common)
        .collect();
    cuts.push(common);
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite times"));
    cuts.dedup();

    let pa = a.pieces(&cuts);
    let pb = b.pieces(&cuts);
    let mut diff: f64 = pa
        .iter()
        .zip(&pb)
        .map(|(x, y)| piece_difference(x, y, body))
        .sum();

    let (longer, sign) = if end_a > end_b { (a, 1.0) } else { (b, -1.0) };
    let mut start = Instant::ZERO;
    for seg in longer.segments() {
        let end = start.add(seg.duration());
        if end > common {
            let piece = if start >= common {
                Piece { r0: seg.start_radius(), rate: seg.rate(), duration: seg.duration() }
            } else {
                let r0 = seg.start_radius() + seg.rate() * common.since(start);
                Piece { r0, rate: seg.rate(), duration: end.since(common) }
            };
            diff += sign * piece.proper_time(body);
        }
        start = end;
    }
    diff
}

/// Which approximation of the matching condition dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `h << R`: the surface-gravity term dominates.
    NearSurface,
    /// `h >> R`: the curvature term dominates.
    SmallMass,
    General,
}

impl Regime {
    pub fn classify(body: &CentralBody, h: f64) -> Self {
        let r = body.radius();
        if h < 0.1 * r {
            Regime::NearSurface
        } else if h > 10.0 * r {
            Regime::SmallMass
        } else {
            Regime::General
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::NearSurface => "near-surface",
            Regime::SmallMass => "small-mass",
            Regime::General => "general",
        }
    }
}

/// Solution of the proper-time matching condition for given `h` and `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingSolution {
    /// `dt_r / dt_c` from the exact Schwarzschild condition.
    pub ratio_exact: f64,
    /// `(R/R_S)(2R/h + 2)`.
    pub ratio_weak_field: f64,
    /// `c^2/(g h) - (c^2/2) R_0101 / g^2`; algebraically equal to the weak-field form.
    pub ratio_curvature_form: f64,
    /// Target transit time between the branches (s).
    pub dt_c: f64,
    /// Waiting time `dt_r = ratio_exact * dt_c` (s).
    pub dt_r: f64,
    /// Proper time at the crossing for an instantaneous ascent, `sqrt(1 - R_S/(R+h)) dt_r`.
    /// A finite ascent adds the same `dtau_v` to both branches; see [`ProtocolSchedule::tau_star`].
    pub tau_star: f64,
    pub regime: Regime,
}

/// Solve the matching condition with a photon target, `dt_c = d/c`.
pub fn solve_matching(body: &CentralBody, h: f64, d: f64) -> Result<MatchingSolution> {
    if !(d.is_finite() && d > 0.0) {
        return domain(format!("separation d must be positive, got {d}"));
    }
    solve_matching_for_transit(body, h, d / body.constants().c)
}

/// Solve the matching condition for an arbitrary transit time `dt_c`.
pub fn solve_matching_for_transit(body: &CentralBody, h: f64, dt_c: f64) -> Result<MatchingSolution> {
    if !(h.is_finite() && h > 0.0) {
        return domain(format!("height h must be positive and finite, got {h}"));
    }
    if !(dt_c.is_finite() && dt_c > 0.0) {
        return domain(format!("transit time must be positive, got {dt_c}"));
    }
    let r = body.radius();
    let rs = body.schwarzschild_radius();
    let c = body.constants().c;
    let s_hi = dilation_factor(r + h, body)?;
    let s_lo = dilation_factor(r, body)?;
    // s_hi / (s_hi - s_lo) with the difference expanded by its conjugate
    let ratio_exact = s_hi * (s_hi + s_lo) * (r / rs) * ((r + h) / h);
    let ratio_weak_field = (r / rs) * (2.0 * r / h + 2.0);
    let g = body.surface_gravity();
    let ratio_curvature_form = c * c / (g * h) - 0.5 * c * c * body.curvature_r0101() / (g * g);
    let dt_r = ratio_exact * dt_c;
    Ok(MatchingSolution {
        ratio_exact,
        ratio_weak_field,
        ratio_curvature_form,
        dt_c,
        dt_r,
        tau_star: s_hi * dt_r,
        regime: Regime::classify(body, h),
    })
}

/// Near-surface estimate `dt_r ~ c R^2 d / (G M h)`.
pub fn near_surface_duration(body: &CentralBody, h: f64, d: f64) -> f64 {
    let r = body.radius();
    body.constants().c * r * r * d / (body.gm() * h)
}

/// Small-mass estimate `dt_r ~ c R d / (G M)`, valid for `h >> R`.
pub fn small_mass_duration(body: &CentralBody, d: f64) -> f64 {
    body.constants().c * body.radius() * d / body.gm()
}

/// Minimum proper time `2 r_b^2 c / (G M)` of the static-agent protocol,
/// kept as a baseline for comparison.
pub fn static_agent_tau(r_b: f64, body: &CentralBody) -> Result<f64> {
    let rs = body.schwarzschild_radius();
    if r_b.is_nan() || r_b <= rs {
        return domain(format!("baseline radius {r_b:e} m is not outside R_S = {rs:e} m"));
    }
    Ok(2.0 * r_b * r_b * body.constants().c / body.gm())
}

/// Geometry and timing of one run of the protocol.
///
/// Coordinate times are measured from `t0 = 0`:
/// `t1 = dt_v`, `t2 = t1 + dt_s = dt_r`, `t3 = dt_r + dt_v`, `t4 = t3 + dt_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolSchedule {
    pub body: CentralBody,
    pub h: f64,
    pub d: f64,
    pub dt_v: f64,
    pub dt_s: f64,
    pub dt_c: f64,
    pub dt_r: f64,
    /// `[t0, t1, t2, t3, t4]`.
    pub times: [f64; 5],
    /// Proper time of the ascent.
    pub dtau_v: f64,
    /// `sqrt(1 - R_S/(R+h)) dt_c`.
    pub dtau_c: f64,
    /// Proper time of branch `A<B` from `t0` to its crossing at `t3`.
    pub tau_star: f64,
    /// `t4 - t0`.
    pub dt_exp: f64,
}

impl ProtocolSchedule {
    /// A schedule with arbitrary waiting times; it satisfies the matching
    /// condition only if `dt_v + dt_s` happens to equal the solved `dt_r`.
    pub fn new(body: CentralBody, h: f64, d: f64, dt_v: f64, dt_s: f64, dt_c: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return domain(format!("height h must be positive, got {h}"));
        }
        if !(d.is_finite() && d > 0.0) {
            return domain(format!("separation d must be positive, got {d}"));
        }
        if !(dt_v.is_finite() && dt_v >= 0.0) || !(dt_s.is_finite() && dt_s >= 0.0) {
            return domain(format!("dt_v and dt_s must be non-negative, got {dt_v}, {dt_s}"));
        }
        if !(dt_c.is_finite() && dt_c > 0.0) {
            return domain(format!("dt_c must be positive, got {dt_c}"));
        }
        if dt_v + dt_s <= 0.0 {
            return domain("dt_v + dt_s must be positive");
        }
        let dt_r = dt_v + dt_s;
        let r = body.radius();
        let s_hi = dilation_factor(r + h, &body)?;
        let dtau_v = if dt_v > 0.0 {
            proper_time(&PathProfile::new(vec![ascent(r, h, dt_v)], &body)?, &body)
        } else {
            0.0
        };
        let t3 = dt_r + dt_v;
        Ok(ProtocolSchedule {
            body,
            h,
            d,
            dt_v,
            dt_s,
            dt_c,
            dt_r,
            times: [0.0, dt_v, dt_r, t3, t3 + dt_c],
            dtau_v,
            dtau_c: s_hi * dt_c,
            tau_star: dtau_v + s_hi * dt_r,
            dt_exp: t3 + dt_c,
        })
    }

    /// Solve the matching condition for a photon target and split `dt_r`
    /// into an ascent of `dt_v` and a wait of `dt_r - dt_v`.
    pub fn solved(body: CentralBody, h: f64, d: f64, dt_v: f64) -> Result<Self> {
        let sol = solve_matching(&body, h, d)?;
        if dt_v > sol.dt_r {
            return domain(format!(
                "ascent time {dt_v} s exceeds the solved waiting time dt_r = {} s",
                sol.dt_r
            ));
        }
        Self::new(body, h, d, dt_v, sol.dt_r - dt_v, sol.dt_c)
    }

    /// As [`ProtocolSchedule::solved`] with `dt_v` given as a fraction of `dt_r`.
    pub fn solved_with_ascent_fraction(body: CentralBody, h: f64, d: f64, fraction: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return domain(format!("ascent fraction must lie in [0, 1], got {fraction}"));
        }
        let sol = solve_matching(&body, h, d)?;
        Self::new(body, h, d, fraction * sol.dt_r, (1.0 - fraction) * sol.dt_r, sol.dt_c)
    }

    /// `dtau(A<B) - dtau(B<A)` in closed form. The ascent cancels, leaving
    /// `dilation_difference * dt_r - dtau_c`.
    pub fn matching_residual(&self) -> f64 {
        let r = self.body.radius();
        let dd = dilation_difference(r + self.h, r, &self.body).expect("validated radius");
        dd * self.dt_r - self.dtau_c
    }

    /// Proper time of branch `B<A` from `t0` to its crossing at `t4`.
    pub fn tau_b_before_a(&self) -> f64 {
        self.tau_star - self.matching_residual()
    }
}

fn ascent(r: f64, h: f64, duration: f64) -> Segment {
    Segment::LinearAscent { r_start: r, r_end: r + h, duration }
}

/// The two branches of agent A over the whole run `[t0, t4]`.
pub fn build_paths(s: &ProtocolSchedule) -> Result<(PathProfile, PathProfile)> {
    let r = s.body.radius();
    let top = r + s.h;
    let mut ab = Vec::new();
    if s.dt_v > 0.0 {
        ab.push(ascent(r, s.h, s.dt_v));
    }
    ab.push(Segment::Hold { radius: top, duration: s.dt_r + s.dt_c });

    let mut ba = vec![Segment::Hold { radius: r, duration: s.dt_r }];
    if s.dt_v > 0.0 {
        ba.push(ascent(r, s.h, s.dt_v));
    }
    ba.push(Segment::Hold { radius: top, duration: s.dt_c });
    Ok((PathProfile::new(ab, &s.body)?, PathProfile::new(ba, &s.body)?))
}

/// The branches cut at their crossing events: `A<B` on `[t0, t3]`, `B<A` on `[t0, t4]`.
pub fn crossing_paths(s: &ProtocolSchedule) -> Result<(PathProfile, PathProfile)> {
    let (full_ab, ba) = build_paths(s)?;
    let mut ab = full_ab.segments().to_vec();
    if let Some(Segment::Hold { duration, .. }) = ab.last_mut() {
        *duration -= s.dt_c;
    }
    Ok((PathProfile::new(ab, &s.body)?, ba))
}

/// `dtau(A<B) - dtau(B<A)` evaluated by integrating along the two crossing
/// paths rather than from the closed form.
pub fn matching_residual_by_paths(s: &ProtocolSchedule) -> Result<f64> {
    let (ab, ba) = crossing_paths(s)?;
    Ok(proper_time_gap(&ab, &ba, &s.body))
}

/// Margins for the time windows of the absorbing levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    /// `(d/c) / dtau_1`: the decay time must be short against the transit.
    pub decay_margin: f64,
    /// `dtau_1 / epsilon`: the trigger ramp must be short against the decay.
    pub window_margin: f64,
    /// `(t3 - t0) / dt_c`: the transit must be short against the run.
    pub transit_margin: f64,
    pub threshold: f64,
}

impl FeasibilityReport {
    pub fn decay_ok(&self) -> bool {
        self.decay_margin >= self.threshold
    }

    pub fn window_ok(&self) -> bool {
        self.window_margin >= self.threshold
    }

    pub fn transit_ok(&self) -> bool {
        self.transit_margin >= self.threshold
    }

    pub fn passes(&self) -> bool {
        self.decay_ok() && self.window_ok() && self.transit_ok()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.decay_ok() {
            out.push(format!(
                "decay time not short against d/c (margin {:.3} < {})",
                self.decay_margin, self.threshold
            ));
        }
        if !self.window_ok() {
            out.push(format!(
                "trigger ramp epsilon not short against decay time (margin {:.3} < {})",
                self.window_margin, self.threshold
            ));
        }
        if !self.transit_ok() {
            out.push(format!(
                "transit dt_c not short against t3 - t0 (margin {:.3} < {})",
                self.transit_margin, self.threshold
            ));
        }
        out
    }
}

pub fn validate_windows(s: &ProtocolSchedule, dtau_1: f64, epsilon: f64) -> Result<FeasibilityReport> {
    validate_windows_with_threshold(s, dtau_1, epsilon, DEFAULT_FEASIBILITY_FACTOR)
}

pub fn validate_windows_with_threshold(
    s: &ProtocolSchedule,
    dtau_1: f64,
    epsilon: f64,
    threshold: f64,
) -> Result<FeasibilityReport> {
    if !(dtau_1 > 0.0 && epsilon > 0.0 && threshold > 0.0) {
        return domain("decay time, epsilon and threshold must be positive");
    }
    let c = s.body.constants().c;
    Ok(FeasibilityReport {
        decay_margin: (s.d / c) / dtau_1,
        window_margin: dtau_1 / epsilon,
        transit_margin: (s.times[3] - s.times[0]) / s.dt_c,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn earth() -> CentralBody {
        CentralBody::earth()
    }

    fn hold(radius: f64, duration: f64) -> Segment {
        Segment::Hold { radius, duration }
    }

    #[test]
    fn path_validation() {
        let b = earth();
        assert!(PathProfile::new(vec![], &b).is_err());
        assert!(PathProfile::new(vec![hold(b.radius(), 0.0)], &b).is_err());
        assert!(PathProfile::new(vec![hold(1e-3, 1.0)], &b).is_err());
        let p = PathProfile::new(vec![hold(b.radius(), 1.0), ascent(b.radius(), 2.0, 0.5)], &b).unwrap();
        assert_eq!(p.total_duration(), 1.5);
    }

    #[test]
    fn flat_limit_hold() {
        let b = earth();
        let p = PathProfile::new(vec![hold(f64::INFINITY, 5.0)], &b).unwrap();
        assert_eq!(proper_time(&p, &b), 5.0);
    }

    #[test]
    fn surface_hold_matches_series() {
        let b = earth();
        let p = PathProfile::new(vec![hold(b.radius(), 1.0)], &b).unwrap();
        let x = b.schwarzschild_radius() / b.radius();
        assert!((proper_time(&p, &b) - (1.0 - x / 2.0 - x * x / 8.0)).abs() < 2e-16);
    }

    #[test]
    fn ascent_matches_antiderivative() {
        // moderate field so the closed form does not cancel:
        // int sqrt(1 - a/r) dr = sqrt(r (r - a)) - a ln(sqrt r + sqrt(r - a))
        let b = CentralBody::new(1e30, 1e4).unwrap();
        let a = b.schwarzschild_radius();
        let (r0, r1, dur) = (1.5 * a, 6.0 * a, 3.0);
        let f = |r: f64| (r * (r - a)).sqrt() - a * (r.sqrt() + (r - a).sqrt()).ln();
        let expect = (f(r1) - f(r0)) * dur / (r1 - r0);
        let p = PathProfile::new(vec![Segment::LinearAscent { r_start: r0, r_end: r1, duration: dur }], &b)
            .unwrap();
        assert!((proper_time(&p, &b) / expect - 1.0).abs() < 1e-13);
    }

    #[test]
    fn vanishing_ascent_is_a_hold() {
        let b = earth();
        let r = b.radius();
        let flat = PathProfile::new(vec![ascent(r, 0.0, 2.0)], &b).unwrap();
        let held = PathProfile::new(vec![hold(r, 2.0)], &b).unwrap();
        assert!((proper_time(&flat, &b) - proper_time(&held, &b)).abs() < 1e-15);
        let tiny = PathProfile::new(vec![ascent(r, 1e-6, 2.0)], &b).unwrap();
        assert!((proper_time(&tiny, &b) - proper_time(&held, &b)).abs() < 1e-15);
    }

    #[test]
    fn difference_of_identical_paths_is_zero() {
        let b = earth();
        let r = b.radius();
        let p = PathProfile::new(vec![hold(r, 1.0), ascent(r, 3.0, 2.0), hold(r + 3.0, 4.0)], &b).unwrap();
        assert_eq!(proper_time_difference(&p, &p, &b).unwrap(), 0.0);
    }

    #[test]
    fn one_metre_hold_difference() {
        let b = earth();
        let r = b.radius();
        let hi = PathProfile::new(vec![hold(r + 1.0, 1.0)], &b).unwrap();
        let lo = PathProfile::new(vec![hold(r, 1.0)], &b).unwrap();
        let d = proper_time_difference(&hi, &lo, &b).unwrap();
        assert!((d / 1.092_655_818_975_931_5e-16 - 1.0).abs() < 1e-13);
        let back = proper_time_difference(&lo, &hi, &b).unwrap();
        assert_eq!(back, -d);
    }

    #[test]
    fn duration_mismatch_is_rejected() {
        let b = earth();
        let r = b.radius();
        let a = PathProfile::new(vec![hold(r, 1.0)], &b).unwrap();
        let c = PathProfile::new(vec![hold(r, 2.0)], &b).unwrap();
        assert!(proper_time_difference(&a, &c, &b).is_err());
        // the gap form accepts it: the extra second at R counts against `a`
        let gap = proper_time_gap(&a, &c, &b);
        assert!((gap + dilation_factor(r, &b).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_schedule_paths_coincide() {
        // zero height and no wait: both branches are the same worldline
        let b = earth();
        let r = b.radius();
        let ab = PathProfile::new(vec![ascent(r, 0.0, 2.0), hold(r, 2.0)], &b).unwrap();
        let ba = PathProfile::new(vec![hold(r, 2.0), ascent(r, 0.0, 2.0)], &b).unwrap();
        assert_eq!(proper_time_difference(&ab, &ba, &b).unwrap(), 0.0);
    }

    #[test]
    fn earth_headline() {
        let sol = solve_matching(&earth(), 1.0, 0.3e-6).unwrap();
        assert!((sol.dt_r - 9.16).abs() < 0.01, "{}", sol.dt_r);
        assert_eq!(sol.regime, Regime::NearSurface);
        let approx = near_surface_duration(&earth(), 1.0, 0.3e-6);
        assert!((approx / sol.dt_r - 1.0).abs() < 1e-6);
    }

    #[test]
    fn weak_field_large_height_limit() {
        let b = earth();
        let sol = solve_matching(&b, 1e12 * b.radius(), 1.0).unwrap();
        let limit = 2.0 * b.radius() / b.schwarzschild_radius();
        assert!((sol.ratio_weak_field / limit - 1.0).abs() < 1e-11);
    }

    #[test]
    fn matching_rejects_bad_inputs() {
        let b = earth();
        assert!(solve_matching(&b, 0.0, 1.0).is_err());
        assert!(solve_matching(&b, 1.0, 0.0).is_err());
        assert!(solve_matching(&b, -1.0, 1.0).is_err());
    }

    #[test]
    fn small_mass_scenario() {
        let b = CentralBody::new(1e-10, 1e-15).unwrap();
        let t = small_mass_duration(&b, 1e-15);
        assert!((t - 4.49e-2).abs() < 1e-4, "{t}");
        assert!((small_mass_duration(&b, 2e-15) - 2.0 * t).abs() < 1e-18);
        let sol = solve_matching(&b, 1e-7, 1e-15).unwrap();
        assert_eq!(sol.regime, Regime::SmallMass);
        assert!((sol.dt_r / t - 1.0).abs() < 1e-7);
    }

    #[test]
    fn static_baseline() {
        let b = earth();
        let tau = static_agent_tau(b.radius(), &b).unwrap();
        assert!((tau / 6.1e7 - 1.0).abs() < 0.01, "{tau:e}");
        let twice = static_agent_tau(2.0 * b.radius(), &b).unwrap();
        assert!((twice / tau - 4.0).abs() < 1e-14);
        assert!(static_agent_tau(b.schwarzschild_radius(), &b).is_err());
    }

    #[test]
    fn schedule_times_follow_the_figure() {
        let s = ProtocolSchedule::new(earth(), 1.0, 0.3e-6, 0.5, 2.0, 1e-15).unwrap();
        assert_eq!(s.dt_r, 2.5);
        assert_eq!(s.times, [0.0, 0.5, 2.5, 3.0, 3.0 + 1e-15]);
        assert_eq!(s.dt_exp, s.times[4]);
        let t = ProtocolSchedule::new(earth(), 1.0, 0.3e-6, 1.0, 0.0, 1e-15).unwrap();
        // no waiting: the run lasts about twice dt_r
        assert!((t.dt_exp / (2.0 * t.dt_r) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schedule_rejects_bad_inputs() {
        let b = earth();
        assert!(ProtocolSchedule::new(b, 0.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ProtocolSchedule::new(b, 1.0, 1.0, -1.0, 1.0, 1.0).is_err());
        assert!(ProtocolSchedule::new(b, 1.0, 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(ProtocolSchedule::new(b, 1.0, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(ProtocolSchedule::solved(b, 1.0, 0.3e-6, 100.0).is_err());
    }

    #[test]
    fn solved_schedule_has_zero_residual() {
        let s = ProtocolSchedule::solved(earth(), 1.0, 0.3e-6, 0.1).unwrap();
        assert!(s.matching_residual().abs() < 1e-12 * s.tau_star);
        let by_paths = matching_residual_by_paths(&s).unwrap();
        assert!(by_paths.abs() < 1e-12 * s.tau_star, "{by_paths:e}");
        assert!((s.tau_b_before_a() - s.tau_star).abs() < 1e-12 * s.tau_star);
    }

    #[test]
    fn unsolved_residual_matches_algebra() {
        let b = earth();
        let s = ProtocolSchedule::new(b, 1.0, 0.3e-6, 0.2, 3.0, 1e-15).unwrap();
        let dd = dilation_difference(b.radius() + 1.0, b.radius(), &b).unwrap();
        let expect = dd * 3.2 - dilation_factor(b.radius() + 1.0, &b).unwrap() * 1e-15;
        assert!((s.matching_residual() / expect - 1.0).abs() < 1e-12);
        let by_paths = matching_residual_by_paths(&s).unwrap();
        assert!((by_paths / expect - 1.0).abs() < 1e-9, "{by_paths:e} vs {expect:e}");
    }

    #[test]
    fn feasibility_windows() {
        let s = ProtocolSchedule::solved(earth(), 1.0, 0.3e-6, 0.1).unwrap();
        let c = s.body.constants().c;
        let r = validate_windows(&s, 1e-17, 1e-19).unwrap();
        assert!((r.decay_margin - 0.3e-6 / c / 1e-17).abs() < 1e-9);
        assert!((r.window_margin - 100.0).abs() < 1e-9);
        assert!(r.passes());
        let r = validate_windows(&s, 0.3e-6 / c, 1e-19).unwrap();
        assert!(!r.decay_ok() && r.window_ok());
        let r = validate_windows(&s, 1e-17, 1e-17).unwrap();
        assert!(!r.window_ok());
        assert_eq!(r.failures().len(), 1);
    }
}
