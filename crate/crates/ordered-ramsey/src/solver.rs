//! SAT deciding for [`CnfFormula`]: an embedded conflict-driven
//! clause-learning solver, a plain DPLL engine kept as a cross-check, and a
//! bridge to external DIMACS solvers speaking the `s`/`v` output convention.
//!
//! The CDCL core is the classic recipe: unit propagation over two watched
//! literals, first-UIP conflict analysis with clause learning,
//! non-chronological backjumping, activity-based decisions with decay, phase
//! saving and Luby restarts. Learned clauses are never deleted; the instances
//! this crate targets stay comfortably small.

use std::io::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::encode::{write_dimacs, CnfFormula};

/// Final verdict of a solve call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    /// Conflict limit reached before a verdict; only possible when a limit
    /// was configured.
    Unknown,
}

#[derive(Debug, Clone, Default)]
pub struct SolverStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    /// Total assignment indexed by `var - 1`; present iff `verdict == Sat`.
    pub model: Option<Vec<bool>>,
    pub stats: SolverStats,
}

/// Which engine decides the formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Cdcl,
    /// Plain depth-first search with unit propagation and no learning.
    /// Much slower; retained as an independent cross-check at small sizes.
    Dpll,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Luby restart unit in conflicts.
    pub restart_base: u32,
    /// Variable activity decay factor, in (0, 1).
    pub var_decay: f64,
    pub phase_saving: bool,
    /// Seed for the occasional random decision; a fixed seed makes runs
    /// reproducible.
    pub seed: u64,
    /// Fraction of decisions taken at random instead of by activity.
    pub random_decision_freq: f64,
    /// Abort with [`Verdict::Unknown`] after this many conflicts.
    pub conflict_limit: Option<u64>,
    /// Periodically drop low-activity learned clauses. Deleting learned
    /// clauses never changes the verdict (they are implied), but keeps
    /// watch lists short on refutation-heavy instances.
    pub reduce_learned: bool,
    pub engine: Engine,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restart_base: 100,
            var_decay: 0.95,
            phase_saving: true,
            seed: 0,
            random_decision_freq: 0.0,
            conflict_limit: None,
            reduce_learned: true,
            engine: Engine::Cdcl,
        }
    }
}

impl SolverConfig {
    fn validate(&self) {
        assert!(self.restart_base >= 1, "restart base must be >= 1");
        assert!(
            self.var_decay > 0.0 && self.var_decay < 1.0,
            "decay factor must lie in (0, 1)"
        );
        assert!((0.0..=1.0).contains(&self.random_decision_freq));
    }
}

/// Decides satisfiability. Sound and complete: `Sat` outcomes carry a model
/// that is re-checked against the formula before being returned, and `Unsat`
/// is definitive unless a conflict limit was configured (then `Unknown` may
/// be returned instead).
pub fn solve(formula: &CnfFormula, cfg: &SolverConfig) -> SolveOutcome {
    cfg.validate();
    let start = Instant::now();
    let mut outcome = match cfg.engine {
        Engine::Cdcl => Cdcl::new(formula, cfg).run(),
        Engine::Dpll => dpll_solve(formula, cfg),
    };
    outcome.stats.wall = start.elapsed();
    if let Some(model) = &outcome.model {
        assert!(
            formula.evaluate(model).expect("model is total"),
            "solver produced a model that does not satisfy the formula"
        );
    }
    outcome
}

// ---------------------------------------------------------------------------
// CDCL engine
// ---------------------------------------------------------------------------

/// Literal encoded as `var << 1 | sign`, `sign = 1` for negation.
/// Variables are 0-indexed internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lit(u32);

impl Lit {
    fn new(var: usize, positive: bool) -> Lit {
        Lit((var as u32) << 1 | u32::from(!positive))
    }

    fn from_dimacs(lit: i32) -> Lit {
        debug_assert!(lit != 0);
        Lit((lit.unsigned_abs() - 1) << 1 | u32::from(lit < 0))
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn negated(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    /// Index into per-literal tables.
    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    clause: u32,
    /// Some other literal of the clause; if it is already true the clause
    /// needs no work.
    blocker: Lit,
}

struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    fn new(seed: u64) -> XorShift64 {
        XorShift64 { state: seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1 }
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// The i-th term (0-indexed) of the Luby restart sequence 1,1,2,1,1,2,4,...
fn luby(mut x: u64) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) / 2;
        seq -= 1;
        x %= size;
    }
    1u64 << seq
}

struct Cdcl {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<Watcher>>,
    assign: Vec<Option<bool>>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    saved_phase: Vec<bool>,
    seen: Vec<bool>,
    rng: XorShift64,
    stats: SolverStats,
    cfg: SolverConfig,
    /// Set while loading when the input is already contradictory.
    root_conflict: bool,
    // learned-clause bookkeeping; originals live in clauses[..first_learnt]
    first_learnt: u32,
    clause_activity: Vec<f64>,
    cla_inc: f64,
    dead: Vec<bool>,
    alive_learnts: usize,
    reduce_threshold: usize,
}

impl Cdcl {
    fn new(formula: &CnfFormula, cfg: &SolverConfig) -> Cdcl {
        let n = formula.num_vars();
        let mut solver = Cdcl {
            num_vars: n,
            clauses: Vec::with_capacity(formula.clauses().len()),
            watches: vec![Vec::new(); 2 * n],
            assign: vec![None; n],
            level: vec![0; n],
            reason: vec![None; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; n],
            var_inc: 1.0,
            saved_phase: vec![false; n],
            seen: vec![false; n],
            rng: XorShift64::new(cfg.seed),
            stats: SolverStats::default(),
            cfg: cfg.clone(),
            root_conflict: false,
            first_learnt: 0,
            clause_activity: Vec::new(),
            cla_inc: 1.0,
            dead: Vec::new(),
            alive_learnts: 0,
            reduce_threshold: 2500,
        };
        for clause in formula.clauses() {
            solver.add_input_clause(clause);
            if solver.root_conflict {
                break;
            }
        }
        solver.first_learnt = solver.clauses.len() as u32;
        solver.clause_activity = vec![0.0; solver.clauses.len()];
        solver.dead = vec![false; solver.clauses.len()];
        solver
    }

    fn add_input_clause(&mut self, lits: &[i32]) {
        match lits.len() {
            0 => self.root_conflict = true,
            1 => {
                let lit = Lit::from_dimacs(lits[0]);
                if !self.enqueue(lit, None) {
                    self.root_conflict = true;
                }
            }
            _ => {
                let clause: Vec<Lit> = lits.iter().map(|&l| Lit::from_dimacs(l)).collect();
                let cid = self.clauses.len() as u32;
                self.watches[clause[0].index()].push(Watcher { clause: cid, blocker: clause[1] });
                self.watches[clause[1].index()].push(Watcher { clause: cid, blocker: clause[0] });
                self.clauses.push(clause);
            }
        }
    }

    fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.assign[lit.var()].map(|v| v == lit.is_positive())
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Assigns `lit` true. Returns false when it is already false.
    fn enqueue(&mut self, lit: Lit, reason: Option<u32>) -> bool {
        match self.lit_value(lit) {
            Some(true) => true,
            Some(false) => false,
            None => {
                let v = lit.var();
                self.assign[v] = Some(lit.is_positive());
                self.level[v] = self.decision_level();
                self.reason[v] = reason;
                self.trail.push(lit);
                if reason.is_some() {
                    self.stats.propagations += 1;
                }
                true
            }
        }
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p.negated();
            // take the list so new watchers can be pushed to other lists;
            // surviving entries are compacted in place (no allocation)
            let mut watchers = std::mem::take(&mut self.watches[false_lit.index()]);
            let mut conflict = None;
            let mut read = 0;
            let mut write = 0;
            'watchers: while read < watchers.len() {
                let w = watchers[read];
                read += 1;
                if self.lit_value(w.blocker) == Some(true) {
                    watchers[write] = w;
                    write += 1;
                    continue;
                }
                let cid = w.clause as usize;
                if self.clauses[cid][0] == false_lit {
                    self.clauses[cid].swap(0, 1);
                }
                debug_assert_eq!(self.clauses[cid][1], false_lit);
                let first = self.clauses[cid][0];
                if self.lit_value(first) == Some(true) {
                    watchers[write] = Watcher { clause: w.clause, blocker: first };
                    write += 1;
                    continue;
                }
                for k in 2..self.clauses[cid].len() {
                    let candidate = self.clauses[cid][k];
                    if self.lit_value(candidate) != Some(false) {
                        self.clauses[cid].swap(1, k);
                        self.watches[candidate.index()]
                            .push(Watcher { clause: w.clause, blocker: first });
                        continue 'watchers;
                    }
                }
                // no replacement watch: unit or conflicting on `first`
                watchers[write] = Watcher { clause: w.clause, blocker: first };
                write += 1;
                if self.lit_value(first) == Some(false) {
                    while read < watchers.len() {
                        watchers[write] = watchers[read];
                        write += 1;
                        read += 1;
                    }
                    self.qhead = self.trail.len();
                    conflict = Some(w.clause);
                } else {
                    self.enqueue(first, Some(w.clause));
                }
            }
            watchers.truncate(write);
            self.watches[false_lit.index()] = watchers;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
    }

    fn decay_var_activity(&mut self) {
        self.var_inc /= self.cfg.var_decay;
    }

    fn bump_clause(&mut self, cid: u32) {
        if cid < self.first_learnt {
            return;
        }
        let a = &mut self.clause_activity[cid as usize];
        *a += self.cla_inc;
        if *a > 1e20 {
            for act in &mut self.clause_activity {
                *act *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn decay_clause_activity(&mut self) {
        self.cla_inc /= 0.999;
    }

    /// First-UIP conflict analysis with recursive clause minimization.
    /// Returns the learned clause (asserting literal first, a highest-level
    /// literal second) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut pending = 0usize;
        let mut expanding: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level();

        loop {
            self.bump_clause(confl);
            let skip = usize::from(expanding.is_some());
            for qi in skip..self.clauses[confl as usize].len() {
                let q = self.clauses[confl as usize][qi];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let lit = self.trail[index];
            self.seen[lit.var()] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = lit.negated();
                break;
            }
            confl = self.reason[lit.var()].expect("implied literal has a reason");
            expanding = Some(lit);
        }

        // drop literals implied by the rest of the clause; `seen` is still
        // set on learnt[1..] and doubles as the cache during the check
        let abstract_levels = learnt[1..]
            .iter()
            .fold(0u32, |acc, l| acc | self.abstract_level(l.var()));
        let mut extra_marks: Vec<usize> = Vec::new();
        let mut kept = vec![learnt[0]];
        for &lit in &learnt[1..] {
            if self.reason[lit.var()].is_none()
                || !self.lit_redundant(lit, abstract_levels, &mut extra_marks)
            {
                kept.push(lit);
            }
        }
        for l in &learnt[1..] {
            self.seen[l.var()] = false;
        }
        for v in extra_marks {
            self.seen[v] = false;
        }
        let mut learnt = kept;

        let mut backjump = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var()] > self.level[learnt[max_i].var()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            backjump = self.level[learnt[1].var()];
        }
        (learnt, backjump)
    }

    fn abstract_level(&self, v: usize) -> u32 {
        1 << (self.level[v] & 31)
    }

    /// Is `p` implied by seen literals, recursively through reasons? Marks
    /// made along a successful check are kept in `seen` (recorded in
    /// `extra_marks`) so later checks can reuse them.
    fn lit_redundant(&mut self, p: Lit, abstract_levels: u32, extra_marks: &mut Vec<usize>) -> bool {
        let mut stack = vec![p];
        let rollback = extra_marks.len();
        while let Some(q) = stack.pop() {
            let cid = self.reason[q.var()].expect("only implied literals are stacked") as usize;
            for k in 1..self.clauses[cid].len() {
                let l = self.clauses[cid][k];
                let v = l.var();
                if !self.seen[v] && self.level[v] > 0 {
                    if self.reason[v].is_some()
                        && self.abstract_level(v) & abstract_levels != 0
                    {
                        self.seen[v] = true;
                        extra_marks.push(v);
                        stack.push(l);
                    } else {
                        for &v2 in &extra_marks[rollback..] {
                            self.seen[v2] = false;
                        }
                        extra_marks.truncate(rollback);
                        return false;
                    }
                }
            }
        }
        true
    }

    fn cancel_until(&mut self, target: u32) {
        if self.decision_level() <= target {
            return;
        }
        let lim = self.trail_lim[target as usize];
        for i in (lim..self.trail.len()).rev() {
            let lit = self.trail[i];
            let v = lit.var();
            self.saved_phase[v] = lit.is_positive();
            self.assign[v] = None;
            self.reason[v] = None;
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(target as usize);
        self.qhead = lim;
    }

    fn record_learnt(&mut self, learnt: Vec<Lit>) {
        if learnt.len() == 1 {
            let ok = self.enqueue(learnt[0], None);
            debug_assert!(ok, "asserting literal must be enqueueable after backjump");
        } else {
            let cid = self.clauses.len() as u32;
            self.watches[learnt[0].index()].push(Watcher { clause: cid, blocker: learnt[1] });
            self.watches[learnt[1].index()].push(Watcher { clause: cid, blocker: learnt[0] });
            let assert_lit = learnt[0];
            self.clauses.push(learnt);
            self.clause_activity.push(self.cla_inc);
            self.dead.push(false);
            self.alive_learnts += 1;
            let ok = self.enqueue(assert_lit, Some(cid));
            debug_assert!(ok);
        }
    }

    /// Is this clause the reason of its asserted first literal?
    fn locked(&self, cid: u32) -> bool {
        let first = self.clauses[cid as usize][0];
        self.lit_value(first) == Some(true) && self.reason[first.var()] == Some(cid)
    }

    /// Drops the lower-activity half of the learned clauses (keeping locked
    /// and binary ones) and rebuilds the watch lists.
    fn reduce_db(&mut self) {
        let mut candidates: Vec<u32> = (self.first_learnt..self.clauses.len() as u32)
            .filter(|&cid| !self.dead[cid as usize])
            .collect();
        candidates.sort_by(|&a, &b| {
            self.clause_activity[a as usize]
                .partial_cmp(&self.clause_activity[b as usize])
                .expect("activities are finite")
        });
        let target = candidates.len() / 2;
        let mut removed = 0;
        for &cid in &candidates {
            if removed >= target {
                break;
            }
            if self.clauses[cid as usize].len() > 2 && !self.locked(cid) {
                self.dead[cid as usize] = true;
                self.clauses[cid as usize] = Vec::new();
                self.alive_learnts -= 1;
                removed += 1;
            }
        }
        for list in &mut self.watches {
            list.clear();
        }
        for cid in 0..self.clauses.len() {
            if !self.dead[cid] {
                let (a, b) = (self.clauses[cid][0], self.clauses[cid][1]);
                self.watches[a.index()].push(Watcher { clause: cid as u32, blocker: b });
                self.watches[b.index()].push(Watcher { clause: cid as u32, blocker: a });
            }
        }
    }

    fn pick_branch_var(&mut self) -> Option<usize> {
        if self.cfg.random_decision_freq > 0.0
            && self.rng.next_f64() < self.cfg.random_decision_freq
        {
            let unassigned: Vec<usize> =
                (0..self.num_vars).filter(|&v| self.assign[v].is_none()).collect();
            if !unassigned.is_empty() {
                return Some(unassigned[self.rng.below(unassigned.len())]);
            }
            return None;
        }
        let mut best: Option<usize> = None;
        for v in 0..self.num_vars {
            if self.assign[v].is_none()
                && best.is_none_or(|b| self.activity[v] > self.activity[b])
            {
                best = Some(v);
            }
        }
        best
    }

    fn run(mut self) -> SolveOutcome {
        if self.root_conflict {
            return SolveOutcome { verdict: Verdict::Unsat, model: None, stats: self.stats };
        }
        let mut restarts = 0u64;
        let mut conflicts_left = self.cfg.restart_base as u64 * luby(restarts);
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    return SolveOutcome {
                        verdict: Verdict::Unsat,
                        model: None,
                        stats: self.stats,
                    };
                }
                let (learnt, backjump) = self.analyze(confl);
                self.cancel_until(backjump);
                self.record_learnt(learnt);
                self.decay_var_activity();
                self.decay_clause_activity();
                if self
                    .cfg
                    .conflict_limit
                    .is_some_and(|limit| self.stats.conflicts >= limit)
                {
                    return SolveOutcome {
                        verdict: Verdict::Unknown,
                        model: None,
                        stats: self.stats,
                    };
                }
                conflicts_left = conflicts_left.saturating_sub(1);
                if conflicts_left == 0 {
                    restarts += 1;
                    self.stats.restarts = restarts;
                    conflicts_left = self.cfg.restart_base as u64 * luby(restarts);
                    self.cancel_until(0);
                }
            } else if self.trail.len() == self.num_vars {
                let model = self.assign.iter().map(|v| v.expect("total")).collect();
                return SolveOutcome {
                    verdict: Verdict::Sat,
                    model: Some(model),
                    stats: self.stats,
                };
            } else {
                if self.cfg.reduce_learned && self.alive_learnts >= self.reduce_threshold {
                    self.reduce_db();
                    self.reduce_threshold += self.reduce_threshold / 2;
                }
                let v = self.pick_branch_var().expect("unassigned variable exists");
                self.stats.decisions += 1;
                let phase = if self.cfg.phase_saving { self.saved_phase[v] } else { false };
                self.trail_lim.push(self.trail.len());
                let ok = self.enqueue(Lit::new(v, phase), None);
                debug_assert!(ok);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// DPLL cross-check engine
// ---------------------------------------------------------------------------

fn dpll_solve(formula: &CnfFormula, cfg: &SolverConfig) -> SolveOutcome {
    let mut stats = SolverStats::default();
    if formula.clauses().iter().any(|c| c.is_empty()) {
        return SolveOutcome { verdict: Verdict::Unsat, model: None, stats };
    }
    let mut assign: Vec<Option<bool>> = vec![None; formula.num_vars()];

    enum Found {
        Sat,
        Unsat,
        LimitHit,
    }

    fn lit_true(assign: &[Option<bool>], lit: i32) -> Option<bool> {
        assign[lit.unsigned_abs() as usize - 1].map(|v| v == (lit > 0))
    }

    /// Unit propagation to fixpoint; returns assigned vars (for undo) or
    /// None on conflict.
    fn propagate(
        formula: &CnfFormula,
        assign: &mut Vec<Option<bool>>,
        stats: &mut SolverStats,
    ) -> Option<Vec<usize>> {
        let mut assigned = Vec::new();
        loop {
            let mut changed = false;
            for clause in formula.clauses() {
                let mut unassigned = None;
                let mut n_unassigned = 0;
                let mut satisfied = false;
                for &lit in clause {
                    match lit_true(assign, lit) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            n_unassigned += 1;
                            unassigned = Some(lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match n_unassigned {
                    0 => {
                        for v in assigned {
                            assign[v] = None;
                        }
                        return None;
                    }
                    1 => {
                        let lit = unassigned.expect("counted one");
                        let v = lit.unsigned_abs() as usize - 1;
                        assign[v] = Some(lit > 0);
                        assigned.push(v);
                        stats.propagations += 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(assigned);
            }
        }
    }

    fn search(
        formula: &CnfFormula,
        assign: &mut Vec<Option<bool>>,
        stats: &mut SolverStats,
        limit: Option<u64>,
    ) -> Found {
        let Some(assigned) = propagate(formula, assign, stats) else {
            stats.conflicts += 1;
            if limit.is_some_and(|l| stats.conflicts >= l) {
                return Found::LimitHit;
            }
            return Found::Unsat;
        };
        let branch = (0..assign.len()).find(|&v| assign[v].is_none());
        let Some(v) = branch else {
            return Found::Sat;
        };
        stats.decisions += 1;
        for value in [true, false] {
            assign[v] = Some(value);
            match search(formula, assign, stats, limit) {
                Found::Sat => return Found::Sat,
                Found::LimitHit => return Found::LimitHit,
                Found::Unsat => {}
            }
            assign[v] = None;
        }
        for v in assigned {
            assign[v] = None;
        }
        Found::Unsat
    }

    match search(formula, &mut assign, &mut stats, cfg.conflict_limit) {
        Found::Sat => {
            let model = assign.iter().map(|v| v.unwrap_or(false)).collect();
            SolveOutcome { verdict: Verdict::Sat, model: Some(model), stats }
        }
        Found::Unsat => SolveOutcome { verdict: Verdict::Unsat, model: None, stats },
        Found::LimitHit => SolveOutcome { verdict: Verdict::Unknown, model: None, stats },
    }
}

// ---------------------------------------------------------------------------
// External solver bridge
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum ExternalSolveError {
    #[error("empty solver command")]
    EmptyCommand,
    #[error("i/o error running external solver: {0}")]
    Io(#[from] std::io::Error),
    #[error("no `s SATISFIABLE`/`s UNSATISFIABLE` line in solver output")]
    NoVerdict,
    #[error("unrecognized verdict line `{0}`")]
    BadVerdict(String),
    #[error("bad token `{0}` in model line")]
    BadModelToken(String),
    #[error("model literal {0} is out of range")]
    ModelLiteralOutOfRange(i32),
    #[error("external model failed verification against the formula")]
    ModelVerification,
}

/// Runs `solver_command <cnf-file>` on the formula and parses the
/// SAT-competition `s`/`v` output convention. `Sat` models are re-verified
/// against the formula; a model that fails verification is an integrity
/// error, never a `Sat` result.
pub fn external_solve(
    formula: &CnfFormula,
    solver_command: &str,
) -> Result<SolveOutcome, ExternalSolveError> {
    let start = Instant::now();
    let mut parts = solver_command.split_whitespace();
    let program = parts.next().ok_or(ExternalSolveError::EmptyCommand)?;

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("instance.cnf");
    {
        let mut file = std::fs::File::create(&path)?;
        write_dimacs(formula, &mut file)?;
        file.flush()?;
    }

    let output = Command::new(program).args(parts).arg(&path).output()?;
    let stdout = String::from_utf8_lossy(&output.stdout);

    let mut verdict = None;
    let mut model_lits: Vec<i32> = Vec::new();
    for line in stdout.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            verdict = Some(match rest.trim() {
                "SATISFIABLE" => Verdict::Sat,
                "UNSATISFIABLE" => Verdict::Unsat,
                "UNKNOWN" => Verdict::Unknown,
                other => return Err(ExternalSolveError::BadVerdict(other.to_string())),
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| ExternalSolveError::BadModelToken(tok.to_string()))?;
                if lit != 0 {
                    model_lits.push(lit);
                }
            }
        }
    }
    let verdict = verdict.ok_or(ExternalSolveError::NoVerdict)?;

    let stats = SolverStats { wall: start.elapsed(), ..SolverStats::default() };
    match verdict {
        Verdict::Sat => {
            let mut model = vec![false; formula.num_vars()];
            for lit in model_lits {
                let v = lit.unsigned_abs() as usize;
                if v == 0 || v > formula.num_vars() {
                    return Err(ExternalSolveError::ModelLiteralOutOfRange(lit));
                }
                model[v - 1] = lit > 0;
            }
            if !formula.evaluate(&model).expect("model is total") {
                return Err(ExternalSolveError::ModelVerification);
            }
            Ok(SolveOutcome { verdict: Verdict::Sat, model: Some(model), stats })
        }
        v => Ok(SolveOutcome { verdict: v, model: None, stats }),
    }
}
