//! Agents A (six levels) and B (five levels) scattering a photon in an order
//! controlled by the path of A, the detector postselections and the diagonal
//! measurements that expose the superposition of orders.
//!
//! The level scheme is data ([`ENERGY_LEVELS`]); both interaction operators
//! are generated from it. A photon that an agent does not absorb leaves it
//! decaying to its idle level while emitting a witness photon, recorded by
//! flipping that agent's detector to 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{self, level::*, Factor, SparseOperator, StateVector, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Agent {
    A,
    B,
}

impl Agent {
    pub fn factor(self) -> Factor {
        match self {
            Agent::A => Factor::AgentA,
            Agent::B => Factor::AgentB,
        }
    }

    pub fn detector(self) -> Factor {
        match self {
            Agent::A => Factor::DetA,
            Agent::B => Factor::DetB,
        }
    }

    pub fn other(self) -> Agent {
        match self {
            Agent::A => Agent::B,
            Agent::B => Agent::A,
        }
    }

    /// Level the agent waits in before the photon arrives.
    pub fn ready(self) -> usize {
        match self {
            Agent::A => A1,
            Agent::B => B1,
        }
    }

    /// Level reached after decaying without absorbing.
    pub fn idle(self) -> usize {
        match self {
            Agent::A => A5,
            Agent::B => B5,
        }
    }
}

/// One absorb-then-decay channel: the agent in its ready level absorbs
/// `absorbs`, is excited to `excited`, and decays quickly to `settles`
/// emitting `emits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub agent: Agent,
    pub absorbs: usize,
    pub excited: usize,
    pub settles: usize,
    pub emits: usize,
}

pub const ENERGY_LEVELS: [Transition; 4] = [
    Transition { agent: Agent::A, absorbs: E1, excited: A2, settles: A3, emits: E2 },
    Transition { agent: Agent::A, absorbs: E4, excited: A4, settles: A5, emits: E5 },
    Transition { agent: Agent::B, absorbs: E1, excited: B2, settles: B3, emits: E4 },
    Transition { agent: Agent::B, absorbs: E2, excited: B4, settles: B5, emits: E3 },
];

/// The channel through which `agent` absorbs target level `e`, if any.
pub fn transition(agent: Agent, e: usize) -> Option<&'static Transition> {
    ENERGY_LEVELS.iter().find(|t| t.agent == agent && t.absorbs == e)
}

/// The photon an agent emits when it absorbs an `e1` photon, which is the
/// only one the other agent can scatter a second time.
fn relay(agent: Agent) -> &'static Transition {
    transition(agent, E1).expect("both agents absorb e1")
}

/// Raw amplitudes of a scattering model. Phases are in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub c1a: Complex64,
    pub c4a: Complex64,
    pub c1b: Complex64,
    pub c2b: Complex64,
    pub delta_1a: f64,
    pub delta_4a: f64,
    pub delta_1b: f64,
    pub delta_2b: f64,
    /// A-then-B second scattering of the relayed photon by B.
    pub f_ba: Complex64,
    /// B-then-A second scattering of the relayed photon by A.
    pub f_ab: Complex64,
    pub gamma_ba: f64,
    pub gamma_ab: f64,
}

impl Default for ModelParams {
    /// Every channel absorbs with certainty.
    fn default() -> Self {
        let one = Complex64::new(1.0, 0.0);
        ModelParams {
            c1a: one,
            c4a: one,
            c1b: one,
            c2b: one,
            delta_1a: 0.0,
            delta_4a: 0.0,
            delta_1b: 0.0,
            delta_2b: 0.0,
            f_ba: one,
            f_ab: one,
            gamma_ba: 0.0,
            gamma_ab: 0.0,
        }
    }
}

/// Absorption and non-absorption amplitude of one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub absorb: Complex64,
    pub pass: Complex64,
}

impl Channel {
    fn new(name: &str, c: Complex64, phase: f64) -> Result<Self> {
        let m = c.norm_sqr();
        if !c.re.is_finite() || !c.im.is_finite() || !phase.is_finite() {
            return Err(Error::InvalidModel(format!("{name} is not finite")));
        }
        if m > 1.0 + TOLERANCE {
            return Err(Error::InvalidModel(format!("|{name}| = {} exceeds 1", m.sqrt())));
        }
        let pass = Complex64::from_polar((1.0 - m).max(0.0).sqrt(), phase);
        Ok(Channel { absorb: c, pass })
    }

    /// A channel the agent never absorbs through.
    const CLOSED: Channel = Channel {
        absorb: Complex64::new(0.0, 0.0),
        pass: Complex64::new(1.0, 0.0),
    };
}

/// A validated scattering model with derived complements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeModel {
    params: ModelParams,
    c1a: Channel,
    c4a: Channel,
    c1b: Channel,
    c2b: Channel,
    f_ba: Channel,
    f_ab: Channel,
}

impl AmplitudeModel {
    pub fn new(params: ModelParams) -> Result<Self> {
        let p = params;
        Ok(AmplitudeModel {
            params,
            c1a: Channel::new("c1A", p.c1a, p.delta_1a)?,
            c4a: Channel::new("c4A", p.c4a, p.delta_4a)?,
            c1b: Channel::new("c1B", p.c1b, p.delta_1b)?,
            c2b: Channel::new("c2B", p.c2b, p.delta_2b)?,
            f_ba: Channel::new("f_BA", p.f_ba, p.gamma_ba)?,
            f_ab: Channel::new("f_AB", p.f_ab, p.gamma_ab)?,
        })
    }

    pub fn ideal() -> Self {
        Self::new(ModelParams::default()).expect("ideal model is valid")
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// First-scattering channel of `agent` for target level `e`.
    pub fn channel(&self, agent: Agent, e: usize) -> Channel {
        match (agent, e) {
            (Agent::A, E1) => self.c1a,
            (Agent::A, E4) => self.c4a,
            (Agent::B, E1) => self.c1b,
            (Agent::B, E2) => self.c2b,
            _ => Channel::CLOSED,
        }
    }

    /// Channel of `agent` rescattering the photon relayed by the other agent.
    pub fn second_scattering(&self, agent: Agent) -> Channel {
        match agent {
            Agent::B => self.f_ba,
            Agent::A => self.f_ab,
        }
    }
}

/// Whether the agent acts first or second along a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderContext {
    First,
    Second,
}

fn one_agent_entries(
    agent: Agent,
    model: &AmplitudeModel,
    rescatter: bool,
    mut push: impl FnMut(usize, usize, usize, Complex64),
) {
    // push(input target, output agent level, output target*2 + detector, amplitude)
    for e in 0..Factor::Target.dim() {
        let ch = if rescatter && e == relay(agent.other()).emits {
            model.second_scattering(agent)
        } else {
            model.channel(agent, e)
        };
        if let Some(t) = transition(agent, e) {
            if ch.absorb.norm_sqr() > 0.0 {
                push(e, t.settles, t.emits * 2 + ABSENT, ch.absorb);
            }
        }
        if ch.pass.norm_sqr() > 0.0 {
            push(e, agent.idle(), e * 2 + PRESENT, ch.pass);
        }
    }
}

fn build_interaction(agent: Agent, model: &AmplitudeModel, ctx: OrderContext) -> Result<SparseOperator> {
    let a = agent.factor();
    let det = agent.detector();
    let td = Factor::Target.dim() * 2;
    match ctx {
        OrderContext::First => {
            let factors = [a, Factor::Target, det];
            let mut entries = Vec::new();
            one_agent_entries(agent, model, false, |e, lvl, td_out, amp| {
                let input = (agent.ready() * Factor::Target.dim() + e) * 2 + ABSENT;
                entries.push((input, lvl * td + td_out, amp));
            });
            SparseOperator::new(&factors, entries)
        }
        OrderContext::Second => {
            // the partner's level tells whether the incoming photon was
            // relayed by it
            let partner = agent.other();
            let pf = partner.factor();
            let (factors, partner_major) = match agent {
                Agent::A => ([a, pf, Factor::Target, det], false),
                Agent::B => ([pf, a, Factor::Target, det], true),
            };
            let pd = pf.dim();
            let ad = a.dim();
            let index = |lvl: usize, p: usize, tdet: usize| {
                if partner_major {
                    (p * ad + lvl) * td + tdet
                } else {
                    (lvl * pd + p) * td + tdet
                }
            };
            let mut entries = Vec::new();
            for p in 0..pd {
                let rescatter = p == relay(partner).settles;
                one_agent_entries(agent, model, rescatter, |e, lvl, td_out, amp| {
                    let input = index(agent.ready(), p, e * 2 + ABSENT);
                    entries.push((input, index(lvl, p, td_out), amp));
                });
            }
            SparseOperator::new(&factors, entries)
        }
    }
}

/// `U_A`: acts on (agentA, target, detA) when first; when second it also
/// reads agentB to recognise the photon B relayed.
pub fn interaction_a(model: &AmplitudeModel, ctx: OrderContext) -> Result<SparseOperator> {
    build_interaction(Agent::A, model, ctx)
}

/// `U_B`, mirror of [`interaction_a`].
pub fn interaction_b(model: &AmplitudeModel, ctx: OrderContext) -> Result<SparseOperator> {
    build_interaction(Agent::B, model, ctx)
}

/// `|A1>|B1> sum alpha_i |e_i>`, detectors empty, path in the equal
/// superposition of both orders.
pub fn build_input(alpha: &[Complex64; 5]) -> Result<StateVector> {
    let n: f64 = alpha.iter().map(|a| a.norm_sqr()).sum();
    if (n - 1.0).abs() > TOLERANCE {
        return Err(Error::NotNormalized(n));
    }
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let path = StateVector::from_amplitudes(&[Factor::Path], vec![h, h])?;
    let agents = StateVector::basis(&[(Factor::AgentA, A1), (Factor::AgentB, B1)])?;
    let target = StateVector::from_amplitudes(&[Factor::Target], alpha.to_vec())?;
    let dets = StateVector::basis(&[(Factor::DetA, ABSENT), (Factor::DetB, ABSENT)])?;
    path.tensor(&agents)?.tensor(&target)?.tensor(&dets)
}

/// Unit input on a single target level.
pub fn basis_input(e: usize) -> Result<StateVector> {
    let mut alpha = [Complex64::new(0.0, 0.0); 5];
    *alpha.get_mut(e).ok_or(Error::IndexOutOfRange { factor: "target", index: e, dim: 5 })? =
        Complex64::new(1.0, 0.0);
    build_input(&alpha)
}

/// Detector pattern of postselection `zeta`: 0 both witnesses, 1 only the
/// one from A, 2 only the one from B, 3 none.
pub fn detector_pattern(zeta: usize) -> Result<(usize, usize)> {
    match zeta {
        0 => Ok((PRESENT, PRESENT)),
        1 => Ok((PRESENT, ABSENT)),
        2 => Ok((ABSENT, PRESENT)),
        3 => Ok((ABSENT, ABSENT)),
        _ => Err(Error::Domain(format!("postselection {zeta} is not one of 0..3"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DiagonalBranch {
    pub sign: Sign,
    /// Conditional on the postselection.
    pub probability: f64,
    pub residual: Option<StateVector>,
}

#[derive(Debug, Clone)]
pub struct DiagonalOutcome {
    pub plus: DiagonalBranch,
    pub minus: DiagonalBranch,
    /// Weight outside the span of the measured basis.
    pub remainder: f64,
}

#[derive(Debug, Clone)]
pub struct Postselected {
    pub zeta: usize,
    pub probability: f64,
    /// Normalized state of path, agents and target; `None` at zero probability.
    pub state: Option<StateVector>,
}

#[derive(Debug, Clone)]
pub struct SwitchOutcome {
    pub state: StateVector,
    pub postselections: [Postselected; 4],
}

impl SwitchOutcome {
    pub fn postselected(&self, zeta: usize) -> Result<&Postselected> {
        detector_pattern(zeta)?;
        Ok(&self.postselections[zeta])
    }

    pub fn total_probability(&self) -> f64 {
        self.postselections.iter().map(|p| p.probability).sum()
    }
}

/// Apply the path-controlled pair of interactions to `input`.
pub fn evolve(input: &StateVector, model: &AmplitudeModel) -> Result<StateVector> {
    if input.factors() != Factor::ALL {
        return Err(Error::FactorMismatch("switch input must span the full space".into()));
    }
    let ua1 = interaction_a(model, OrderContext::First)?;
    let ub2 = interaction_b(model, OrderContext::Second)?;
    let ub1 = interaction_b(model, OrderContext::First)?;
    let ua2 = interaction_a(model, OrderContext::Second)?;
    let (ab, _) = hilbert::project(input, |l| l.is(Factor::Path, A_BEFORE_B));
    let (ba, _) = hilbert::project(input, |l| l.is(Factor::Path, B_BEFORE_A));
    let ab = hilbert::apply(&ub2, &hilbert::apply(&ua1, &ab)?)?;
    let ba = hilbert::apply(&ua2, &hilbert::apply(&ub1, &ba)?)?;
    ab.add(&ba)
}

/// Project the detectors onto pattern `zeta`; returns the normalized state on
/// (path, agentA, agentB, target) and its probability.
pub fn postselect(state: &StateVector, zeta: usize) -> Result<(Option<StateVector>, f64)> {
    let (da, db) = detector_pattern(zeta)?;
    let zeta_ket = StateVector::basis(&[(Factor::DetA, da), (Factor::DetB, db)])?;
    let rest = state.partial_inner(&zeta_ket)?;
    let p = rest.norm_sqr();
    let s = if p > 0.0 { Some(rest.normalized()?) } else { None };
    Ok((s, p))
}

pub fn run_switch(input: &StateVector, model: &AmplitudeModel) -> Result<SwitchOutcome> {
    let state = evolve(input, model)?;
    let mut post = Vec::with_capacity(4);
    for zeta in 0..4 {
        let (s, p) = postselect(&state, zeta)?;
        post.push(Postselected { zeta, probability: p, state: s });
    }
    let postselections: [Postselected; 4] = post.try_into().expect("four postselections");
    Ok(SwitchOutcome { state, postselections })
}

fn diagonal(state: &StateVector, basis: [StateVector; 2]) -> Result<DiagonalOutcome> {
    let m = hilbert::measure_in_basis(state, &basis)?;
    let mut it = m.outcomes.into_iter().zip([Sign::Plus, Sign::Minus]).map(|(o, sign)| DiagonalBranch {
        sign,
        probability: o.probability,
        residual: o.residual,
    });
    let plus = it.next().expect("two outcomes");
    let minus = it.next().expect("two outcomes");
    Ok(DiagonalOutcome { plus, minus, remainder: m.remainder })
}

/// `(|F_AB> +/- |F_BA>)/sqrt2` with `|F_AB> = |A<B>|A3>|B5>` and
/// `|F_BA> = |B<A>|A5>|B3>`, leaving the target as residual.
pub fn agent_diagonal_basis() -> Result<[StateVector; 2]> {
    let f_ab = StateVector::basis(&[(Factor::Path, A_BEFORE_B), (Factor::AgentA, A3), (Factor::AgentB, B5)])?;
    let f_ba = StateVector::basis(&[(Factor::Path, B_BEFORE_A), (Factor::AgentA, A5), (Factor::AgentB, B3)])?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let make = |s: Sign| -> Result<StateVector> {
        f_ab.scaled(Complex64::new(h, 0.0)).add(&f_ba.scaled(Complex64::new(s.value() * h, 0.0)))
    };
    Ok([make(Sign::Plus)?, make(Sign::Minus)?])
}

/// `(|A<B> +/- |B<A>)/sqrt2` on the path alone.
pub fn path_diagonal_basis() -> Result<[StateVector; 2]> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let make = |s: Sign| {
        StateVector::from_amplitudes(&[Factor::Path], vec![Complex64::new(h, 0.0), Complex64::new(s.value() * h, 0.0)])
    };
    Ok([make(Sign::Plus)?, make(Sign::Minus)?])
}

/// Measure path and agents in the `F+/-` basis on a postselected state; the
/// residuals are target states.
pub fn diagonal_measure(postselected: &StateVector) -> Result<DiagonalOutcome> {
    diagonal(postselected, agent_diagonal_basis()?)
}

/// Measure only the path in `(|A<B> +/- |B<A>)/sqrt2`; the residuals live on
/// agents and target.
pub fn path_diagonal_measure(postselected: &StateVector) -> Result<DiagonalOutcome> {
    diagonal(postselected, path_diagonal_basis()?)
}

/// Amplitudes on (agentA, agentB, target) of one path branch after
/// postselection, unnormalized and without the 1/sqrt2 of the path.
pub fn branch_state(state: &StateVector, path: usize) -> Result<StateVector> {
    let p = StateVector::basis(&[(Factor::Path, path)])?;
    Ok(state.partial_inner(&p)?.scaled(Complex64::new(std::f64::consts::SQRT_2, 0.0)))
}

/// A model with every amplitude drawn uniformly from the unit disc and
/// every phase uniformly from `[-pi, pi)`.
pub fn random_model<R: rand::Rng>(rng: &mut R) -> AmplitudeModel {
    use std::f64::consts::PI;
    let mut disc = || Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
    let (c1a, c4a, c1b, c2b, f_ba, f_ab) = (disc(), disc(), disc(), disc(), disc(), disc());
    let mut phase = || rng.gen_range(-PI..PI);
    AmplitudeModel::new(ModelParams {
        c1a,
        c4a,
        c1b,
        c2b,
        delta_1a: phase(),
        delta_4a: phase(),
        delta_1b: phase(),
        delta_2b: phase(),
        f_ba,
        f_ab,
        gamma_ba: phase(),
        gamma_ab: phase(),
    })
    .expect("unit-disc amplitudes are valid")
}

/// A normalized input drawn from the uniform measure on the unit sphere.
pub fn random_alpha<R: rand::Rng>(rng: &mut R) -> [Complex64; 5] {
    use rand_distr::{Distribution, StandardNormal};
    let mut a = [Complex64::new(0.0, 0.0); 5];
    for x in &mut a {
        *x = Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
    }
    let n = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    a.map(|x| x / n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disc(rng: &mut ChaCha8Rng) -> Complex64 {
        let r = rng.gen::<f64>().sqrt();
        Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
    }

    fn random_model(rng: &mut ChaCha8Rng) -> AmplitudeModel {
        let mut ph = || rng.gen_range(-3.0..3.0);
        let (d1, d2, d3, d4, g1, g2) = (ph(), ph(), ph(), ph(), ph(), ph());
        AmplitudeModel::new(ModelParams {
            c1a: disc(rng),
            c4a: disc(rng),
            c1b: disc(rng),
            c2b: disc(rng),
            delta_1a: d1,
            delta_4a: d2,
            delta_1b: d3,
            delta_2b: d4,
            f_ba: disc(rng),
            f_ab: disc(rng),
            gamma_ba: g1,
            gamma_ab: g2,
        })
        .unwrap()
    }

    fn random_alpha(rng: &mut ChaCha8Rng) -> [Complex64; 5] {
        let mut a = [c(0.0, 0.0); 5];
        for x in &mut a {
            *x = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let n = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        a.map(|x| x / n)
    }

    fn ket(a: usize, b: usize, e: usize) -> [(Factor, usize); 3] {
        [(Factor::AgentA, a), (Factor::AgentB, b), (Factor::Target, e)]
    }

    #[test]
    fn first_interactions_follow_level_scheme() {
        let m = AmplitudeModel::ideal();
        let ua = interaction_a(&m, OrderContext::First).unwrap();
        let s = StateVector::basis(&[(Factor::AgentA, A1), (Factor::Target, E1), (Factor::DetA, 0)]).unwrap();
        let out = hilbert::apply(&ua, &s).unwrap();
        assert_eq!(out.amplitude(&[(Factor::AgentA, A3), (Factor::Target, E2), (Factor::DetA, 0)]).unwrap(), c(1.0, 0.0));

        let s = StateVector::basis(&[(Factor::AgentA, A1), (Factor::Target, E4), (Factor::DetA, 0)]).unwrap();
        let out = hilbert::apply(&ua, &s).unwrap();
        assert_eq!(out.amplitude(&[(Factor::AgentA, A5), (Factor::Target, E5), (Factor::DetA, 0)]).unwrap(), c(1.0, 0.0));

        let s = StateVector::basis(&[(Factor::AgentA, A1), (Factor::Target, E3), (Factor::DetA, 0)]).unwrap();
        let out = hilbert::apply(&ua, &s).unwrap();
        assert_eq!(out.amplitude(&[(Factor::AgentA, A5), (Factor::Target, E3), (Factor::DetA, 1)]).unwrap(), c(1.0, 0.0));

        let ub = interaction_b(&m, OrderContext::First).unwrap();
        for (e_in, b_out, e_out) in [(E2, B5, E3), (E1, B3, E4)] {
            let s = StateVector::basis(&[(Factor::AgentB, B1), (Factor::Target, e_in), (Factor::DetB, 0)]).unwrap();
            let out = hilbert::apply(&ub, &s).unwrap();
            assert_eq!(out.amplitude(&[(Factor::AgentB, b_out), (Factor::Target, e_out), (Factor::DetB, 0)]).unwrap(), c(1.0, 0.0));
        }
        let s = StateVector::basis(&[(Factor::AgentB, B1), (Factor::Target, E5), (Factor::DetB, 0)]).unwrap();
        let out = hilbert::apply(&ub, &s).unwrap();
        assert_eq!(out.amplitude(&[(Factor::AgentB, B5), (Factor::Target, E5), (Factor::DetB, 1)]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn interactions_are_isometries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let m = random_model(&mut rng);
            for ctx in [OrderContext::First, OrderContext::Second] {
                assert!(interaction_a(&m, ctx).unwrap().isometry_defect() < 1e-12);
                assert!(interaction_b(&m, ctx).unwrap().isometry_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_model_rejected() {
        let p = ModelParams { c1a: c(0.9, 0.9), ..Default::default() };
        assert!(matches!(AmplitudeModel::new(p), Err(Error::InvalidModel(_))));
        let p = ModelParams { gamma_ab: f64::NAN, ..Default::default() };
        assert!(AmplitudeModel::new(p).is_err());
    }

    #[test]
    fn input_states() {
        assert!(basis_input(E1).unwrap().is_normalized());
        let s = 1.0 / 5f64.sqrt();
        assert!(build_input(&[c(s, 0.0); 5]).unwrap().is_normalized());
        assert!(matches!(build_input(&[c(1.0, 0.0); 5]), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn ideal_e1_switch() {
        let out = run_switch(&basis_input(E1).unwrap(), &AmplitudeModel::ideal()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let st = &out.state;
        let amp = |p, a, b, e| {
            st.amplitude(&[(Factor::Path, p), (Factor::AgentA, a), (Factor::AgentB, b), (Factor::Target, e), (Factor::DetA, 0), (Factor::DetB, 0)]).unwrap()
        };
        assert!((amp(A_BEFORE_B, A3, B5, E3) - h).norm() < 1e-15);
        assert!((amp(B_BEFORE_A, A5, B3, E5) - h).norm() < 1e-15);
        assert!((out.postselections[3].probability - 1.0).abs() < 1e-15);

        let d = diagonal_measure(out.postselections[3].state.as_ref().unwrap()).unwrap();
        for (b, s) in [(&d.plus, 1.0), (&d.minus, -1.0)] {
            assert!((b.probability - 0.5).abs() < 1e-15);
            let r = b.residual.as_ref().unwrap();
            assert!((r.amplitude(&[(Factor::Target, E3)]).unwrap() - h).norm() < 1e-15);
            assert!((r.amplitude(&[(Factor::Target, E5)]).unwrap() - s * h).norm() < 1e-15);
        }
        assert!(d.remainder < 1e-15);
    }

    #[test]
    fn e4_input_disentangles_target() {
        let out = run_switch(&basis_input(E4).unwrap(), &AmplitudeModel::ideal()).unwrap();
        let (s, p) = (&out.postselections[2].state, out.postselections[2].probability);
        assert!((p - 1.0).abs() < 1e-15);
        let s = s.as_ref().unwrap();
        let t = s.factor_state(Factor::Target).unwrap().unwrap();
        assert!((t.amplitude(&[(Factor::Target, E5)]).unwrap().norm() - 1.0).abs() < 1e-15);
    }

    /// The four postselected branch states written out term by term for the
    /// A-then-B order, and their mirror images for B-then-A, indexed by zeta.
    fn closed_form(alpha: &[Complex64; 5], m: &AmplitudeModel, path: usize) -> [Vec<([(Factor, usize); 3], Complex64)>; 4] {
        let p = m.params();
        let ch = |a, e| m.channel(a, e);
        let g_ba = m.second_scattering(Agent::B).pass;
        let g_ab = m.second_scattering(Agent::A).pass;
        let both_pass: Vec<_> = (0..5)
            .map(|i| (ket(A5, B5, i), alpha[i] * ch(Agent::A, i).pass * ch(Agent::B, i).pass))
            .collect();
        if path == A_BEFORE_B {
            [
                both_pass,
                vec![
                    (ket(A5, B3, E4), alpha[0] * ch(Agent::A, E1).pass * p.c1b),
                    (ket(A5, B5, E3), alpha[1] * p.c2b),
                ],
                vec![
                    (ket(A3, B5, E2), alpha[0] * p.c1a * g_ba),
                    (ket(A5, B5, E5), alpha[3] * p.c4a),
                ],
                vec![(ket(A3, B5, E3), alpha[0] * p.c1a * p.f_ba)],
            ]
        } else {
            [
                both_pass,
                vec![
                    (ket(A5, B3, E4), alpha[0] * p.c1b * g_ab),
                    (ket(A5, B5, E3), alpha[1] * p.c2b),
                ],
                vec![
                    (ket(A3, B5, E2), alpha[0] * ch(Agent::B, E1).pass * p.c1a),
                    (ket(A5, B5, E5), alpha[3] * p.c4a),
                ],
                vec![(ket(A5, B3, E5), alpha[0] * p.c1b * p.f_ab)],
            ]
        }
    }

    #[test]
    fn generic_runs_match_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = random_model(&mut rng);
            let alpha = random_alpha(&mut rng);
            let state = evolve(&build_input(&alpha).unwrap(), &m).unwrap();
            for path in [A_BEFORE_B, B_BEFORE_A] {
                let expect = closed_form(&alpha, &m, path);
                for (zeta, terms) in expect.iter().enumerate() {
                    let (da, db) = detector_pattern(zeta).unwrap();
                    let z = StateVector::basis(&[(Factor::DetA, da), (Factor::DetB, db)]).unwrap();
                    let got = branch_state(&state.partial_inner(&z).unwrap(), path).unwrap();
                    let mut oracle = StateVector::zeros(got.factors()).unwrap();
                    for (k, a) in terms {
                        let t = StateVector::basis(k).unwrap().scaled(*a);
                        oracle = oracle.add(&t).unwrap();
                    }
                    assert!(got.max_distance(&oracle).unwrap() < 1e-12, "path {path} zeta {zeta}");
                }
            }
        }
    }

    #[test]
    fn zeta_probabilities_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_model(&mut rng);
            let out = run_switch(&build_input(&random_alpha(&mut rng)).unwrap(), &m).unwrap();
            assert!((out.total_probability() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn switch_is_trivial_without_e1() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = random_model(&mut rng);
            let mut alpha = random_alpha(&mut rng);
            alpha[0] = c(0.0, 0.0);
            let n = alpha.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let alpha = alpha.map(|x| x / n);
            let out = run_switch(&build_input(&alpha).unwrap(), &m).unwrap();
            let ab = branch_state(&out.state, A_BEFORE_B).unwrap();
            let ba = branch_state(&out.state, B_BEFORE_A).unwrap();
            assert!(ab.max_distance(&ba).unwrap() < 1e-12);
            assert_eq!(out.postselections[3].probability, 0.0);
            assert!(out.postselections[3].state.is_none());
        }
    }

    #[test]
    fn no_click_state_ignores_other_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let m = random_model(&mut rng);
            let a1 = c(0.6, 0.1);
            let mut reference: Option<StateVector> = None;
            for _ in 0..3 {
                let mut alpha = random_alpha(&mut rng);
                let rest = (1.0 - a1.norm_sqr()).sqrt();
                let n = alpha[1..].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                for x in &mut alpha[1..] {
                    *x *= rest / n;
                }
                alpha[0] = a1;
                let out = run_switch(&build_input(&alpha).unwrap(), &m).unwrap();
                let s = out.postselections[3].state.clone().unwrap();
                match &reference {
                    None => reference = Some(s),
                    Some(r) => assert!(r.max_distance(&s).unwrap() < 1e-12),
                }
            }
        }
    }

    #[test]
    fn path_diagonal_residuals_are_order_superpositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let m = random_model(&mut rng);
        let alpha = random_alpha(&mut rng);
        let out = run_switch(&build_input(&alpha).unwrap(), &m).unwrap();
        for ps in &out.postselections {
            let Some(s) = &ps.state else { continue };
            let d = path_diagonal_measure(s).unwrap();
            let ab = branch_state(s, A_BEFORE_B).unwrap();
            let ba = branch_state(s, B_BEFORE_A).unwrap();
            for b in [&d.plus, &d.minus] {
                let sign = if b.sign == Sign::Plus { 1.0 } else { -1.0 };
                let expect = ab.add(&ba.scaled(c(sign, 0.0))).unwrap();
                if expect.norm() < 1e-12 {
                    assert!(b.probability < 1e-24);
                    continue;
                }
                let r = b.residual.as_ref().unwrap();
                assert!(r.max_distance(&expect.normalized().unwrap()).unwrap() < 1e-12);
            }
            assert!(d.remainder < 1e-12);
            assert!((d.plus.probability + d.minus.probability - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_zeta() {
        assert!(detector_pattern(4).is_err());
    }
}
