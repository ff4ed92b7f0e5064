//! Recursive construction of disjunctive dominating sets within `floor(2(n+k)/9)`.
//!
//! Each level matches a catalogue rule, deletes (and possibly contracts) a
//! region, solves the smaller mop and lifts the answer back. Lifts are
//! verified; a failed lift moves on to the next match.

mod binder;
pub mod catalogue;
mod small;

use serde::Serialize;
use thiserror::Error;

use crate::bound;
use crate::mop::Mop;
use crate::solvers::{greedy_2dd, DistanceProfile, ExactSolver, SOFT_LIMIT};

pub use binder::SMALL_REDUCED;
pub use small::construct_small;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructorError {
    #[error("n = {n} outside {range}")]
    OutOfRange { n: usize, range: &'static str },
    #[error("invalid mop: {0}")]
    Invalid(String),
    #[error("no small-case set verified for n = {n}")]
    SmallCase { n: usize },
    #[error("no catalogue rule applies")]
    NoRule,
    #[error("lift failed for {rule}")]
    LiftFailed { rule: &'static str },
}

/// Replace `drop`, then add `add`, on top of the pulled-back solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftOption {
    pub drop: Vec<usize>,
    pub add: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub rule_id: &'static str,
    pub deleted: Vec<usize>,
    pub contracted: Option<(usize, usize)>,
    pub budget: usize,
    pub n_before: usize,
    pub k_before: usize,
    pub n_after: usize,
    pub k_after: usize,
    pub graph: Mop,
    pub reduced: Mop,
    /// Preimages in `graph` of each vertex of `reduced`.
    back: Vec<Vec<usize>>,
    /// Tried in order when the merged vertex is in the smaller solution.
    pub merged_options: Vec<LiftOption>,
    pub other_options: Vec<LiftOption>,
    /// Set on `graph` when the reduced graph is small enough to finish directly.
    pub direct: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lifted {
    pub set: Vec<usize>,
    pub merged_in: bool,
    pub option: usize,
    /// Vertex added on top of the option when the lower level left slack.
    pub repair: Option<usize>,
}

impl ReductionStep {
    pub fn is_merged(&self, v: usize) -> bool {
        self.back.get(v).is_some_and(|b| b.len() == 2)
    }

    /// Pulls `d1` back to `graph` and tries the lift options in order,
    /// returning the first that verifies within the budget.
    pub fn lift(&self, d1: &[usize]) -> Result<Lifted, ConstructorError> {
        let prof = DistanceProfile::new(&self.graph);
        self.lift_with(&prof, d1)
    }

    fn pull_back(&self, d1: &[usize]) -> (Vec<usize>, bool) {
        let mut base = Vec::new();
        let mut merged_in = false;
        for &x in d1 {
            merged_in |= self.back[x].len() == 2;
            base.extend(self.back[x].iter().copied());
        }
        (base, merged_in)
    }

    fn apply(&self, base: &[usize], o: &LiftOption) -> Vec<usize> {
        let mut s: Vec<usize> = base.iter().copied().filter(|v| !o.drop.contains(v)).collect();
        s.extend(o.add.iter().copied());
        s.sort_unstable();
        s.dedup();
        s
    }

    fn lift_with(&self, prof: &DistanceProfile, d1: &[usize]) -> Result<Lifted, ConstructorError> {
        let (base, merged_in) = self.pull_back(d1);
        let options = if merged_in { &self.merged_options } else { &self.other_options };
        for (i, o) in options.iter().enumerate() {
            let s = self.apply(&base, o);
            if s.len() <= d1.len() + self.budget && prof.is_2dd_set(&s) {
                return Ok(Lifted { set: s, merged_in, option: i, repair: None });
            }
        }
        let limit = bound(self.n_before, self.k_before);
        for (i, o) in options.iter().enumerate() {
            let s = self.apply(&base, o);
            if s.len() >= limit {
                continue;
            }
            for v in 0..self.graph.n() {
                if s.binary_search(&v).is_ok() {
                    continue;
                }
                let mut t = s.clone();
                t.push(v);
                t.sort_unstable();
                if prof.is_2dd_set(&t) {
                    return Ok(Lifted { set: t, merged_in, option: i, repair: Some(v) });
                }
            }
        }
        Err(ConstructorError::LiftFailed { rule: self.rule_id })
    }

    /// Re-applies a recorded lift option without searching.
    pub fn replay(&self, d1: &[usize], lifted: &Lifted) -> Vec<usize> {
        let (base, _) = self.pull_back(d1);
        let options = if lifted.merged_in { &self.merged_options } else { &self.other_options };
        let mut s = self.apply(&base, &options[lifted.option]);
        if let Some(v) = lifted.repair {
            s.push(v);
            s.sort_unstable();
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseCase {
    /// Direct construction for `7 <= n <= 12`.
    Small(usize),
    /// A rule finished the graph through its small-order clause.
    RuleSmall,
    ExactFallback,
    GreedyFallback,
}

impl BaseCase {
    pub fn tag(&self) -> String {
        match self {
            BaseCase::Small(n) => format!("SMALL-{n}"),
            BaseCase::RuleSmall => "RULE-SMALL".into(),
            BaseCase::ExactFallback => "EXACT-FALLBACK".into(),
            BaseCase::GreedyFallback => "GREEDY-FALLBACK".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AppliedStep {
    pub step: ReductionStep,
    /// `None` when the step resolved its graph directly.
    pub lift: Option<Lifted>,
}

/// One JSONL line of a trace.
#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub rule_id: &'static str,
    pub deleted: Vec<usize>,
    pub contracted: Option<(usize, usize)>,
    pub augment: Vec<usize>,
    pub n_before: usize,
    pub n_after: usize,
    pub k_before: usize,
    pub k_after: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Anomaly {
    pub n: usize,
    pub rule_id: Option<&'static str>,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub steps: Vec<AppliedStep>,
    pub base_case: BaseCase,
    /// Solution of the innermost graph (of the last step's reduced graph, or
    /// of the input when no step applied).
    pub base_set: Vec<usize>,
    pub final_set: Vec<usize>,
    pub used_fallback: bool,
    pub anomalies: Vec<Anomaly>,
    pub bound: usize,
}

impl ConstructionTrace {
    pub fn within_bound(&self) -> bool {
        self.final_set.len() <= self.bound
    }

    pub fn records(&self) -> Vec<StepRecord> {
        self.steps
            .iter()
            .map(|a| {
                let s = &a.step;
                let augment = match (&a.lift, &s.direct) {
                    (Some(l), _) => {
                        let opts = if l.merged_in { &s.merged_options } else { &s.other_options };
                        let mut add = opts[l.option].add.clone();
                        add.extend(l.repair);
                        add
                    }
                    (None, Some(d)) => d.clone(),
                    (None, None) => Vec::new(),
                };
                StepRecord {
                    rule_id: s.rule_id,
                    deleted: s.deleted.clone(),
                    contracted: s.contracted,
                    augment,
                    n_before: s.n_before,
                    n_after: s.n_after,
                    k_before: s.k_before,
                    k_after: s.k_after,
                }
            })
            .collect()
    }

    pub fn to_jsonl(&self) -> String {
        self.records().iter().map(|r| serde_json::to_string(r).unwrap() + "\n").collect()
    }

    /// Rebuilds the final set from the base solution and the recorded lifts.
    pub fn replay(&self) -> Vec<usize> {
        let mut set = self.base_set.clone();
        for a in self.steps.iter().rev() {
            set = match &a.lift {
                Some(l) => a.step.replay(&set, l),
                None => a.step.direct.clone().unwrap_or_default(),
            };
        }
        set
    }
}

/// A solved level: its set and the chain of steps beneath it.
struct Solved {
    set: Vec<usize>,
    chain: Vec<AppliedStep>,
    base_case: BaseCase,
    base_set: Vec<usize>,
    fallback: bool,
}

struct Frame {
    mop: Mop,
    ctx: Option<binder::Context>,
    cands: Vec<binder::Candidate>,
    next: usize,
    step: Option<ReductionStep>,
}

impl Frame {
    fn new(mop: Mop) -> Frame {
        Frame { mop, ctx: None, cands: Vec::new(), next: 0, step: None }
    }
}

/// Lift failures tolerated per construction before falling back.
const RETRY_BUDGET: usize = 64;

fn fallback(m: &Mop, anomalies: &mut Vec<Anomaly>, why: &str) -> Solved {
    anomalies.push(Anomaly { n: m.n(), rule_id: None, message: format!("fallback: {why}") });
    let (set, base_case) = if m.n() <= SOFT_LIMIT {
        (
            ExactSolver::default().solve_2dd(m).map(|s| s.witness).unwrap_or_else(|_| greedy_2dd(m)),
            BaseCase::ExactFallback,
        )
    } else {
        (greedy_2dd(m), BaseCase::GreedyFallback)
    };
    Solved { base_set: set.clone(), set, chain: Vec::new(), base_case, fallback: true }
}

pub fn find_applicable_reduction(m: &Mop) -> Result<ReductionStep, ConstructorError> {
    if m.n() < 13 {
        return Err(ConstructorError::OutOfRange { n: m.n(), range: "13.." });
    }
    let ctx = binder::Context::new(m);
    for c in binder::candidates(m, &ctx) {
        if let Ok(step) = binder::instantiate(m, &ctx, c) {
            return Ok(step);
        }
    }
    Err(ConstructorError::NoRule)
}

/// Builds a verified disjunctive dominating set, normally within
/// `floor(2(n+k)/9)`, recording every reduction.
pub fn construct_bounded_2dd(m: &Mop) -> Result<ConstructionTrace, ConstructorError> {
    let report = m.validate();
    if !report.is_valid() {
        return Err(ConstructorError::Invalid(report.to_string()));
    }
    if m.n() < 7 {
        return Err(ConstructorError::OutOfRange { n: m.n(), range: "7.." });
    }
    let mut anomalies = Vec::new();
    let mut retries = 0usize;
    let mut frames = vec![Frame::new(m.clone())];
    loop {
        // descend until some level is solved outright
        let depth = frames.len();
        let mut solved = {
            let f = frames.last_mut().unwrap();
            let n = f.mop.n();
            if n <= 12 {
                match construct_small(&f.mop) {
                    Ok(set) => Solved {
                        base_set: set.clone(),
                        set,
                        chain: Vec::new(),
                        base_case: BaseCase::Small(n),
                        fallback: false,
                    },
                    Err(e) => fallback(&f.mop, &mut anomalies, &e.to_string()),
                }
            } else {
                if f.ctx.is_none() {
                    let ctx = binder::Context::new(&f.mop);
                    f.cands = binder::candidates(&f.mop, &ctx);
                    f.ctx = Some(ctx);
                }
                let mut found = None;
                while f.next < f.cands.len() {
                    let c = f.cands[f.next];
                    f.next += 1;
                    match binder::instantiate(&f.mop, f.ctx.as_ref().unwrap(), c) {
                        Ok(step) => {
                            found = Some(step);
                            break;
                        }
                        Err(binder::Skip::Structure(_)) => {}
                        Err(skip) => anomalies.push(Anomaly {
                            n,
                            rule_id: Some(catalogue::CATALOGUE[c.rule].id),
                            message: skip.to_string(),
                        }),
                    }
                }
                match found {
                    Some(step) if step.direct.is_some() => {
                        let set = step.direct.clone().unwrap();
                        Solved {
                            set: set.clone(),
                            base_set: set,
                            chain: vec![AppliedStep { step, lift: None }],
                            base_case: BaseCase::RuleSmall,
                            fallback: false,
                        }
                    }
                    Some(step) => {
                        let reduced = step.reduced.clone();
                        f.step = Some(step);
                        frames.push(Frame::new(reduced));
                        continue;
                    }
                    None if depth > 1 && retries <= RETRY_BUDGET => {
                        // nothing left here: let the parent try its next match
                        frames.pop();
                        frames.last_mut().unwrap().step = None;
                        retries += 1;
                        continue;
                    }
                    None => fallback(&f.mop, &mut anomalies, "no applicable rule"),
                }
            }
        };
        frames.pop();
        // unwind, lifting through each pending step
        let mut redo = false;
        while let Some(parent) = frames.last_mut() {
            let step = parent.step.take().unwrap();
            match step.lift(&solved.set) {
                Ok(l) => {
                    if let Some(v) = l.repair {
                        anomalies.push(Anomaly {
                            n: parent.mop.n(),
                            rule_id: Some(step.rule_id),
                            message: format!("lift repaired with vertex {v}"),
                        });
                    }
                    let mut chain = vec![AppliedStep { step, lift: Some(l.clone()) }];
                    chain.append(&mut solved.chain);
                    solved = Solved { set: l.set, chain, ..solved };
                    frames.pop();
                }
                Err(e) => {
                    anomalies.push(Anomaly { n: parent.mop.n(), rule_id: Some(step.rule_id), message: e.to_string() });
                    retries += 1;
                    if retries > RETRY_BUDGET {
                        parent.next = parent.cands.len();
                    }
                    redo = true;
                    break;
                }
            }
        }
        if redo {
            continue;
        }
        let limit = bound(m.n(), m.degree_two_count());
        if solved.set.len() > limit {
            anomalies.push(Anomaly { n: m.n(), rule_id: None, message: "result exceeds bound".into() });
        }
        return Ok(ConstructionTrace {
            steps: solved.chain,
            base_case: solved.base_case,
            base_set: solved.base_set,
            final_set: solved.set,
            used_fallback: solved.fallback,
            anomalies,
            bound: limit,
        });
    }
}
