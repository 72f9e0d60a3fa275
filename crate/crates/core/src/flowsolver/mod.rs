//! Polynomial-time domination for plurality and veto.
//!
//! Under plurality only the top of each ballot matters, and any choice of
//! top-assignable alternatives (one per partial ballot) is realised by some
//! extension. So "is there an extension where the winner is `d` when the
//! manipulator votes `V` and `d'` when she votes `U`" becomes a family of
//! assignment problems, each a max-flow with target score `e_d = l` for `d`,
//! a target for `d'` and caps on everybody else. Veto is the mirror image:
//! ballots are assigned a bottom alternative and the winner has the fewest
//! vetoes, so the other alternatives get lower bounds instead of caps.

mod maxflow;

pub use maxflow::FlowGraph;

use crate::extensions::extension_with_end;
use crate::order::{Alternative, LinearOrder, PartialOrder, PartialProfile, Profile};
use crate::rules::VotingRuleSpec;

/// The two rules with a flow-based algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlowRule {
    Plurality,
    Veto,
}

impl FlowRule {
    pub fn from_spec(rule: &VotingRuleSpec) -> Option<FlowRule> {
        match rule {
            VotingRuleSpec::Plurality => Some(FlowRule::Plurality),
            VotingRuleSpec::Veto => Some(FlowRule::Veto),
            _ => None,
        }
    }

    pub fn spec(self) -> VotingRuleSpec {
        match self {
            FlowRule::Plurality => VotingRuleSpec::Plurality,
            FlowRule::Veto => VotingRuleSpec::Veto,
        }
    }

    /// The ballot end this rule reads: top for plurality, bottom for veto.
    fn counted(self, vote: &LinearOrder) -> Alternative {
        match self {
            FlowRule::Plurality => vote.top(),
            FlowRule::Veto => vote.bottom(),
        }
    }

    fn assignable(self, po: &PartialOrder, a: Alternative) -> bool {
        match self {
            FlowRule::Plurality => can_rank_top(po, a),
            FlowRule::Veto => can_rank_bottom(po, a),
        }
    }
}

/// Some extension of `po` ranks `a` first.
pub fn can_rank_top(po: &PartialOrder, a: Alternative) -> bool {
    po.can_rank_top(a)
}

/// Some extension of `po` ranks `a` last.
pub fn can_rank_bottom(po: &PartialOrder, a: Alternative) -> bool {
    po.can_rank_bottom(a)
}

/// Constraint on how many ballots are assigned to one alternative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    /// Member of `C'`: exactly this many (edge to the sink).
    Exact(i64),
    /// At most this many (edge to `y`).
    AtMost(i64),
    /// At least this many (sink edge for the lower bound, `y` takes the rest).
    AtLeast(i64),
}

struct Solved {
    value: i64,
    graph: FlowGraph,
    /// `(ballot, alternative, edge id)` for every ballot → alternative edge.
    ballot_edges: Vec<(usize, usize, usize)>,
}

/// The assignment network: `s → O_i → c_j → {t, y}`, `y → t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    n: usize,
    m: usize,
    /// Bitset of assignable alternatives per ballot.
    assignable: Vec<u64>,
    bounds: Vec<Bound>,
}

impl FlowNetwork {
    /// Network for `pp` under `rule`; ballot `i` may be assigned alternative
    /// `c` iff `c` can be put at the end of `O_i` that `rule` counts.
    pub fn new(pp: &PartialProfile, rule: FlowRule, bounds: Vec<Bound>) -> Self {
        assert_eq!(bounds.len(), pp.m(), "one bound per alternative");
        let m = pp.m();
        let assignable = pp
            .entries()
            .iter()
            .map(|po| {
                (0..m)
                    .filter(|&a| rule.assignable(po, Alternative::new(a)))
                    .fold(0u64, |mask, a| mask | 1 << a)
            })
            .collect();
        FlowNetwork { n: pp.len(), m, assignable, bounds }
    }

    /// `F_{C'}^{e}`: exact targets for `C'`, caps `e_i` for the rest.
    pub fn with_targets(pp: &PartialProfile, rule: FlowRule, cprime: &[Alternative], e: &[i64]) -> Self {
        let bounds = (0..pp.m())
            .map(|i| {
                if cprime.contains(&Alternative::new(i)) {
                    Bound::Exact(e[i])
                } else {
                    Bound::AtMost(e[i])
                }
            })
            .collect();
        Self::new(pp, rule, bounds)
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn ballot(&self, i: usize) -> usize {
        1 + i
    }

    pub fn alternative(&self, a: Alternative) -> usize {
        1 + self.n + a.index()
    }

    pub fn y(&self) -> usize {
        1 + self.n + self.m
    }

    pub fn sink(&self) -> usize {
        2 + self.n + self.m
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    /// `n` minus everything routed straight to the sink.
    pub fn y_capacity(&self) -> i64 {
        let direct: i64 = self
            .bounds
            .iter()
            .map(|b| match *b {
                Bound::Exact(e) | Bound::AtLeast(e) => e,
                Bound::AtMost(_) => 0,
            })
            .sum();
        self.n as i64 - direct
    }

    /// Directed edges `(from, to, capacity)` in construction order.
    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            out.push((self.source(), self.ballot(i), 1));
        }
        for i in 0..self.n {
            for j in 0..self.m {
                if self.assignable[i] >> j & 1 == 1 {
                    out.push((self.ballot(i), self.alternative(Alternative::new(j)), 1));
                }
            }
        }
        for (j, bound) in self.bounds.iter().enumerate() {
            let c = self.alternative(Alternative::new(j));
            match *bound {
                Bound::Exact(e) => out.push((c, self.sink(), e)),
                Bound::AtMost(e) => out.push((c, self.y(), e)),
                Bound::AtLeast(l) => {
                    out.push((c, self.sink(), l));
                    out.push((c, self.y(), self.n as i64));
                }
            }
        }
        out.push((self.y(), self.sink(), self.y_capacity()));
        out
    }

    /// All capacities nonnegative.
    pub fn is_well_formed(&self) -> bool {
        self.edges().iter().all(|&(_, _, cap)| cap >= 0)
    }

    fn run(&self) -> Option<Solved> {
        if !self.is_well_formed() {
            return None;
        }
        let mut graph = FlowGraph::new(self.sink() + 1);
        let mut ballot_edges = Vec::new();
        for (from, to, cap) in self.edges() {
            let id = graph.add_edge(from, to, cap);
            if (1..=self.n).contains(&from) {
                ballot_edges.push((from - 1, to - 1 - self.n, id));
            }
        }
        let value = graph.max_flow(self.source(), self.sink());
        Some(Solved { value, graph, ballot_edges })
    }

    /// Exact maximum flow value; 0 for a network with a negative capacity.
    pub fn max_flow(&self) -> i64 {
        self.run().map_or(0, |s| s.value)
    }

    /// The ballot → alternative assignment of a flow of value `n`, if any.
    pub fn solve(&self) -> Option<Vec<Alternative>> {
        let solved = self.run()?;
        if solved.value != self.n as i64 {
            return None;
        }
        let mut assignment = vec![None; self.n];
        for (ballot, alt, id) in solved.ballot_edges {
            if solved.graph.flow(id) == 1 {
                assignment[ballot] = Some(Alternative::new(alt));
            }
        }
        assignment.into_iter().collect()
    }
}

pub fn max_flow(net: &FlowNetwork) -> i64 {
    net.max_flow()
}

/// One member of `A^l`: a target pair `(d, d')` and bounds for everyone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleProblem {
    pub d: Alternative,
    pub d_prime: Alternative,
    pub e_d: i64,
    pub e_d_prime: i64,
    pub bounds: Vec<Bound>,
}

impl AdmissibleProblem {
    pub fn network(&self, pp: &PartialProfile, rule: FlowRule) -> FlowNetwork {
        FlowNetwork::new(pp, rule, self.bounds.clone())
    }
}

/// `x` wins against `c` given their totals under the rule's orientation:
/// higher plurality total wins, lower veto count wins, ties to lower index.
fn beats(rule: FlowRule, x: Alternative, tx: i64, c: Alternative, tc: i64) -> bool {
    let (better, equal) = match rule {
        FlowRule::Plurality => (tx > tc, tx == tc),
        FlowRule::Veto => (tx < tc, tx == tc),
    };
    better || (equal && x.precedes(c))
}

/// Every consistent problem with `e_d = l`: `d` wins when the manipulator
/// votes `v`, `d'` wins when she votes `u`, `e_{d'}` ranging over `0..=n`.
///
/// Empty unless `d' ≻_vm d` and the pair can actually swap (for plurality
/// `d = top(v)` or `d' = top(u)`; for veto `d' = bottom(v)` or `d = bottom(u)`).
#[allow(clippy::too_many_arguments)]
pub fn build_admissible_problems(
    pp: &PartialProfile,
    vm: &LinearOrder,
    v: &LinearOrder,
    u: &LinearOrder,
    d: Alternative,
    d_prime: Alternative,
    l: i64,
    rule: FlowRule,
) -> Vec<AdmissibleProblem> {
    let n = pp.len() as i64;
    let m = pp.m();
    if d == d_prime || !vm.prefers(d_prime, d) || !(0..=n).contains(&l) {
        return Vec::new();
    }
    let (iv, ju) = (rule.counted(v), rule.counted(u));
    let relevant = match rule {
        FlowRule::Plurality => d == iv || d_prime == ju,
        FlowRule::Veto => d_prime == iv || d == ju,
    };
    if !relevant {
        return Vec::new();
    }
    let bump = |x: Alternative, end: Alternative| i64::from(x == end);
    let t_v = |x: Alternative, e: i64| e + bump(x, iv);
    let t_u = |x: Alternative, e: i64| e + bump(x, ju);

    let mut out = Vec::new();
    for e_dp in 0..=n {
        if !beats(rule, d, t_v(d, l), d_prime, t_v(d_prime, e_dp))
            || !beats(rule, d_prime, t_u(d_prime, e_dp), d, t_u(d, l))
        {
            continue;
        }
        let mut bounds = Vec::with_capacity(m);
        let mut feasible = true;
        let mut committed = 0i64;
        for c in (0..m).map(Alternative::new) {
            if c == d {
                bounds.push(Bound::Exact(l));
                committed += l;
                continue;
            }
            if c == d_prime {
                bounds.push(Bound::Exact(e_dp));
                committed += e_dp;
                continue;
            }
            let before = |x: Alternative| i64::from(c.precedes(x));
            match rule {
                FlowRule::Plurality => {
                    let cap = (t_v(d, l) - before(d) - bump(c, iv))
                        .min(t_u(d_prime, e_dp) - before(d_prime) - bump(c, ju))
                        .min(n);
                    if cap < 0 {
                        feasible = false;
                        break;
                    }
                    bounds.push(Bound::AtMost(cap));
                }
                FlowRule::Veto => {
                    let low = (t_v(d, l) + before(d) - bump(c, iv))
                        .max(t_u(d_prime, e_dp) + before(d_prime) - bump(c, ju))
                        .max(0);
                    committed += low;
                    bounds.push(Bound::AtLeast(low));
                }
            }
        }
        if feasible && committed <= n {
            out.push(AdmissibleProblem { d, d_prime, e_d: l, e_d_prime: e_dp, bounds });
        }
    }
    out
}

/// An extension `P*` of `pp` with `r(P* ∪ {u}) ≻_vm r(P* ∪ {v})`, found by
/// scanning `l`, then `d`, then `d'`, then `e_{d'}` in ascending order.
pub fn possible_improvement_witness(
    pp: &PartialProfile,
    vm: &LinearOrder,
    v: &LinearOrder,
    u: &LinearOrder,
    rule: FlowRule,
) -> Option<Profile> {
    let n = pp.len() as i64;
    let m = pp.m();
    for l in 0..=n {
        for d in (0..m).map(Alternative::new) {
            for d_prime in (0..m).map(Alternative::new) {
                for problem in build_admissible_problems(pp, vm, v, u, d, d_prime, l, rule) {
                    if let Some(assignment) = problem.network(pp, rule).solve() {
                        return Some(realize(pp, rule, &assignment));
                    }
                }
            }
        }
    }
    None
}

/// Turns a ballot → alternative assignment into a concrete extension.
pub fn realize(pp: &PartialProfile, rule: FlowRule, assignment: &[Alternative]) -> Profile {
    let votes = pp
        .entries()
        .iter()
        .zip(assignment)
        .map(|(po, &a)| extension_with_end(po, a, rule == FlowRule::Plurality))
        .collect();
    Profile::new(pp.m(), votes).expect("same universe")
}

pub fn possible_improvement(
    pp: &PartialProfile,
    vm: &LinearOrder,
    v: &LinearOrder,
    u: &LinearOrder,
    rule: FlowRule,
) -> bool {
    possible_improvement_witness(pp, vm, v, u, rule).is_some()
}

/// `u` dominates `v`: `u` possibly improves on `v` and never does worse.
pub fn flow_domination(
    pp: &PartialProfile,
    vm: &LinearOrder,
    v: &LinearOrder,
    u: &LinearOrder,
    rule: FlowRule,
) -> bool {
    possible_improvement(pp, vm, v, u, rule) && !possible_improvement(pp, vm, u, v, rule)
}

/// A vote dominating the truthful `vm`, or `None`.
///
/// Plurality tries `vm` with each other alternative promoted to the top;
/// veto tries `vm` with each other alternative demoted to the bottom. Each
/// rule reads only that end of the manipulator's ballot, so one canonical
/// vote per alternative covers every candidate.
pub fn flow_dominating_manipulation(pp: &PartialProfile, vm: &LinearOrder, rule: FlowRule) -> Option<LinearOrder> {
    let current = rule.counted(vm);
    (0..pp.m())
        .map(Alternative::new)
        .filter(|&a| a != current)
        .map(|a| match rule {
            FlowRule::Plurality => vm.moved_to_top(a),
            FlowRule::Veto => vm.moved_to_bottom(a),
        })
        .find(|u| flow_domination(pp, vm, vm, u, rule))
}
