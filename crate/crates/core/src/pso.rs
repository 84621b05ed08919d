//! Binary particle swarm over the position `[r, x]`.
//!
//! Particles maximize the penalized objective. Every particle starts at the
//! seed solution with random velocities; a bit is set with probability
//! `sigmoid(v)`. The global best drives the dynamics while a separate
//! record keeps the best feasible position, which is what a run returns.
//!
//! Random numbers are drawn particle by particle, dimension by dimension:
//! the initial velocities, then for each step `u1`, `u2` and the flip draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::model::{Instance, Penalty, Solution};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwarmParams {
    pub particles: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub v_max: f64,
    /// `None` picks the default for the instance mode.
    pub penalty: Option<Penalty>,
    pub seed: u64,
}

impl Default for SwarmParams {
    fn default() -> Self {
        Self {
            particles: 50,
            iterations: 2000,
            inertia: 1.0,
            cognitive: 2.0,
            social: 2.0,
            v_max: 6.0,
            penalty: None,
            seed: 0,
        }
    }
}

impl SwarmParams {
    /// Longer runs used for the city-scale study.
    pub fn case_study() -> Self {
        Self { iterations: 5000, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.particles == 0 {
            return bad("the swarm needs at least one particle".into());
        }
        if !(self.v_max > 0.0 && self.v_max.is_finite()) {
            return bad(format!("v_max must be positive, got {}", self.v_max));
        }
        for (name, v) in [("inertia", self.inertia), ("cognitive", self.cognitive), ("social", self.social)] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        Ok(())
    }

    fn penalty_for(&self, inst: &Instance) -> Result<Penalty> {
        let p = self.penalty.unwrap_or_else(|| Penalty::default_for(inst.mode()));
        p.check(inst.mode())?;
        Ok(p)
    }
}

#[inline]
pub fn sigmoid(v: f64) -> f64 {
    1.0 / (1.0 + (-v).exp())
}

#[derive(Clone, Debug)]
pub struct SwarmState {
    pub positions: Vec<Vec<bool>>,
    pub velocities: Vec<Vec<f64>>,
    pub personal_best: Vec<(Vec<bool>, f64)>,
    pub global_best: (Vec<bool>, f64),
    /// Best feasible position by service level.
    pub feasible_best: Option<(Vec<bool>, f64)>,
    penalty: Penalty,
    rng: ChaCha8Rng,
}

fn swarm_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn init_swarm(inst: &Instance, seed: &Solution, params: &SwarmParams) -> Result<SwarmState> {
    init_stream(inst, seed, params, 0)
}

fn init_stream(inst: &Instance, seed: &Solution, params: &SwarmParams, stream: u64) -> Result<SwarmState> {
    params.validate()?;
    seed.check_dims(inst)?;
    let penalty = params.penalty_for(inst)?;
    let mut rng = swarm_rng(params.seed, stream);
    let start = seed.to_position();
    let value = inst.penalized_unchecked(&start, penalty);
    let velocities = (0..params.particles)
        .map(|_| (0..start.len()).map(|_| rng.gen_range(-params.v_max..=params.v_max)).collect())
        .collect();
    let feasible_best = inst.is_feasible(seed).ok.then(|| (start.clone(), inst.service_level(seed)));
    Ok(SwarmState {
        positions: vec![start.clone(); params.particles],
        velocities,
        personal_best: vec![(start.clone(), value); params.particles],
        global_best: (start, value),
        feasible_best,
        penalty,
        rng,
    })
}

/// One synchronous move of every particle.
pub fn step(state: &mut SwarmState, params: &SwarmParams, inst: &Instance) {
    let bit = |b: bool| if b { 1.0 } else { 0.0 };
    let gbest = state.global_best.0.clone();
    for s in 0..state.positions.len() {
        let pos = &mut state.positions[s];
        let vel = &mut state.velocities[s];
        let pbest = &state.personal_best[s].0;
        for d in 0..pos.len() {
            let u1: f64 = state.rng.gen();
            let u2: f64 = state.rng.gen();
            let here = bit(pos[d]);
            let v = params.inertia * vel[d]
                + params.cognitive * u1 * (bit(pbest[d]) - here)
                + params.social * u2 * (bit(gbest[d]) - here);
            vel[d] = v.clamp(-params.v_max, params.v_max);
            let flip: f64 = state.rng.gen();
            pos[d] = flip < sigmoid(vel[d]);
        }
    }
    let nk = inst.n_stations();
    for s in 0..state.positions.len() {
        let pos = &state.positions[s];
        let value = inst.penalized_unchecked(pos, state.penalty);
        if value > state.personal_best[s].1 {
            state.personal_best[s] = (pos.clone(), value);
        }
        if value > state.global_best.1 {
            state.global_best = (pos.clone(), value);
        }
        let sol = Solution::from_position(nk, pos);
        if inst.is_feasible(&sol).ok {
            let c = inst.service_level(&sol);
            if state.feasible_best.as_ref().map_or(true, |(_, best)| c > *best) {
                state.feasible_best = Some((pos.clone(), c));
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwarmOutcome {
    pub best: Solution,
    /// Service level of `best`.
    pub value: f64,
    /// Global best penalized value, initial state first, then after every step.
    pub trace: Vec<f64>,
}

pub fn run(inst: &Instance, seed: &Solution, params: &SwarmParams) -> Result<SwarmOutcome> {
    run_stream(inst, seed, params, 0)
}

fn run_stream(inst: &Instance, seed: &Solution, params: &SwarmParams, stream: u64) -> Result<SwarmOutcome> {
    let mut state = init_stream(inst, seed, params, stream)?;
    let mut trace = Vec::with_capacity(params.iterations + 1);
    trace.push(state.global_best.1);
    for _ in 0..params.iterations {
        step(&mut state, params, inst);
        trace.push(state.global_best.1);
    }
    let (best, value) = match state.feasible_best {
        Some((pos, c)) => (Solution::from_position(inst.n_stations(), &pos), c),
        None => (seed.clone(), inst.service_level(seed)),
    };
    Ok(SwarmOutcome { best, value, trace })
}

#[derive(Clone, Debug)]
pub struct ReplicationSummary {
    pub best: Solution,
    pub max: f64,
    pub average: f64,
    pub runs: Vec<SwarmOutcome>,
}

/// `reps` independent swarms; replication `e` reads stream `e` of the
/// master seed, so replication 0 repeats [`run`].
pub fn replicate(
    inst: &Instance,
    seed: &Solution,
    params: &SwarmParams,
    reps: usize,
    exec: Execution,
) -> Result<ReplicationSummary> {
    if reps == 0 {
        return Err(Error::InvalidParameter("at least one replication is required".into()));
    }
    let runs = exec::map_range(exec, reps, |e| run_stream(inst, seed, params, e as u64))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut top = 0;
    for (e, r) in runs.iter().enumerate() {
        if r.value > runs[top].value {
            top = e;
        }
    }
    let average = runs.iter().map(|r| r.value).sum::<f64>() / reps as f64;
    Ok(ReplicationSummary { best: runs[top].best.clone(), max: runs[top].value, average, runs })
}
