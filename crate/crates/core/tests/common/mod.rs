//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, One, ToPrimitive, Zero};

/// Exact rational built from binary floating point inputs.
#[derive(Clone, Debug)]
pub struct Q {
    n: BigInt,
    d: BigInt,
}

impl Q {
    pub fn from_f64(x: f64) -> Q {
        let (m, e, s) = x.integer_decode();
        let n = BigInt::from(m) * BigInt::from(s);
        if e >= 0 {
            Q { n: n << e as usize, d: BigInt::one() }
        } else {
            Q { n, d: BigInt::one() << (-e) as usize }
        }
    }

    pub fn int(k: i64) -> Q {
        Q { n: BigInt::from(k), d: BigInt::one() }
    }

    pub fn mul(&self, o: &Q) -> Q {
        Q { n: &self.n * &o.n, d: &self.d * &o.d }
    }

    pub fn div(&self, o: &Q) -> Q {
        assert!(!o.n.is_zero());
        let (n, d) = (&self.n * &o.d, &self.d * &o.n);
        if d < BigInt::zero() {
            Q { n: -n, d: -d }
        } else {
            Q { n, d }
        }
    }

    pub fn add(&self, o: &Q) -> Q {
        Q { n: &self.n * &o.d + &o.n * &self.d, d: &self.d * &o.d }
    }

    pub fn sub(&self, o: &Q) -> Q {
        Q { n: &self.n * &o.d - &o.n * &self.d, d: &self.d * &o.d }
    }

    /// `floor(sqrt(self) * 2^bits)`.
    pub fn sqrt_fixed(&self, bits: usize) -> BigInt {
        assert!(self.n >= BigInt::zero());
        ((&self.n << (2 * bits)) / &self.d).sqrt()
    }
}

/// Bits of the fixed-point square roots; 2^-320 is about 1e-96.
pub const ORACLE_BITS: usize = 320;

fn fixed_to_f64(x: &BigInt, bits: usize) -> f64 {
    // shift down to keep the integer inside f64 range
    let shift = bits.saturating_sub(600);
    let v = (x >> shift).to_f64().unwrap();
    v * 2f64.powi(-((bits - shift) as i32))
}

/// `sqrt(1 - rs/r_hi) - sqrt(1 - rs/r_lo)` with `rs = 2GM/c^2`, every input
/// taken exactly and both roots carried to about 96 digits.
pub fn dilation_difference_oracle(g: f64, m: f64, c: f64, r_hi: f64, r_lo: f64) -> f64 {
    let rs = Q::int(2).mul(&Q::from_f64(g)).mul(&Q::from_f64(m)).div(&Q::from_f64(c).mul(&Q::from_f64(c)));
    let root = |r: f64| Q::int(1).sub(&rs.div(&Q::from_f64(r))).sqrt_fixed(ORACLE_BITS);
    fixed_to_f64(&(root(r_hi) - root(r_lo)), ORACLE_BITS)
}

/// Decimal digits the oracle carries.
pub fn oracle_digits() -> f64 {
    ORACLE_BITS as f64 * 2f64.log10()
}

// Dense switch oracle. Index layout (path, A, B, target, detA, detB) with the
// last factor fastest; path 0 is A-then-B, detector 1 means a witness photon.

pub const DIMS: [usize; 6] = [2, 6, 5, 5, 2, 2];
pub const N: usize = 1200;

pub fn idx(path: usize, a: usize, b: usize, t: usize, da: usize, db: usize) -> usize {
    ((((path * 6 + a) * 5 + b) * 5 + t) * 2 + da) * 2 + db
}

pub fn digits(mut i: usize) -> [usize; 6] {
    let mut d = [0; 6];
    for k in (0..6).rev() {
        d[k] = i % DIMS[k];
        i /= DIMS[k];
    }
    d
}

/// Raw scattering amplitudes, same meaning as the model parameters.
#[derive(Clone, Copy, Debug)]
pub struct Amps {
    pub c1a: Complex64,
    pub c4a: Complex64,
    pub c1b: Complex64,
    pub c2b: Complex64,
    pub d1a: f64,
    pub d4a: f64,
    pub d1b: f64,
    pub d2b: f64,
    pub f_ba: Complex64,
    pub f_ab: Complex64,
    pub g_ba: f64,
    pub g_ab: f64,
}

fn pass(c: Complex64, phase: f64) -> Complex64 {
    Complex64::from_polar((1.0 - c.norm_sqr()).max(0.0).sqrt(), phase)
}

// levels: A1..A5 are 1..5 with A0 = 0; B1..B5 are 0..4; e1..e5 are 0..4
const A1: usize = 1;
const A3: usize = 3;
const A5: usize = 5;
const B1: usize = 0;
const B3: usize = 2;
const B5: usize = 4;
const E1: usize = 0;
const E2: usize = 1;
const E3: usize = 2;
const E4: usize = 3;
const E5: usize = 4;

/// Outgoing (agent level, target, detector, amplitude) of agent A in A1 meeting target `t`.
fn scatter_a(m: &Amps, t: usize, b_relayed: bool) -> Vec<(usize, usize, usize, Complex64)> {
    match t {
        E1 => vec![(A3, E2, 0, m.c1a), (A5, E1, 1, pass(m.c1a, m.d1a))],
        E4 if b_relayed => vec![(A5, E5, 0, m.f_ab), (A5, E4, 1, pass(m.f_ab, m.g_ab))],
        E4 => vec![(A5, E5, 0, m.c4a), (A5, E4, 1, pass(m.c4a, m.d4a))],
        _ => vec![(A5, t, 1, Complex64::new(1.0, 0.0))],
    }
}

fn scatter_b(m: &Amps, t: usize, a_relayed: bool) -> Vec<(usize, usize, usize, Complex64)> {
    match t {
        E1 => vec![(B3, E4, 0, m.c1b), (B5, E1, 1, pass(m.c1b, m.d1b))],
        E2 if a_relayed => vec![(B5, E3, 0, m.f_ba), (B5, E2, 1, pass(m.f_ba, m.g_ba))],
        E2 => vec![(B5, E3, 0, m.c2b), (B5, E2, 1, pass(m.c2b, m.d2b))],
        _ => vec![(B5, t, 1, Complex64::new(1.0, 0.0))],
    }
}

/// Row-major dense `N x N` matrix.
pub struct Dense(pub Vec<Complex64>);

impl Dense {
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..N).map(|r| self.0[r * N..(r + 1) * N].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Full-space matrix of one agent's scattering on the branch `path`, where
/// `second` marks the agent that acts after its partner.
pub fn dense_interaction(m: &Amps, agent_a: bool, second: bool, path: usize) -> Dense {
    let mut u = vec![Complex64::new(0.0, 0.0); N * N];
    for col in 0..N {
        let [p, a, b, t, da, db] = digits(col);
        if p != path {
            continue;
        }
        if agent_a {
            if a != A1 || da != 0 {
                continue;
            }
            for (a2, t2, d2, amp) in scatter_a(m, t, second && b == B3) {
                u[idx(p, a2, b, t2, d2, db) * N + col] += amp;
            }
        } else {
            if b != B1 || db != 0 {
                continue;
            }
            for (b2, t2, d2, amp) in scatter_b(m, t, second && a == A3) {
                u[idx(p, a, b2, t2, da, d2) * N + col] += amp;
            }
        }
    }
    Dense(u)
}

/// Input `(|A<B> + |B<A>)/sqrt2 |A1 B1> sum alpha_i |e_i> |0 0>`.
pub fn dense_input(alpha: &[Complex64; 5]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); N];
    for p in 0..2 {
        for (t, a) in alpha.iter().enumerate() {
            v[idx(p, A1, B1, t, 0, 0)] = a * std::f64::consts::FRAC_1_SQRT_2;
        }
    }
    v
}

/// `U_B U_A` on the A-then-B branch plus `U_A U_B` on the other.
pub fn dense_switch(m: &Amps, alpha: &[Complex64; 5]) -> Vec<Complex64> {
    let v = dense_input(alpha);
    let ab = dense_interaction(m, false, true, 0).apply(&dense_interaction(m, true, false, 0).apply(&v));
    let ba = dense_interaction(m, true, true, 1).apply(&dense_interaction(m, false, false, 1).apply(&v));
    ab.iter().zip(&ba).map(|(x, y)| x + y).collect()
}

pub const E_LEVELS: [usize; 5] = [E1, E2, E3, E4, E5];
