//! Hardness constructions as concrete instances: exact cover by 3-sets to
//! Borda domination, and the possible-winner transformations for
//! WMG-based rules, with brute-force checkers for their side conditions.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::extensions::{InformationSet, ProfileSpace};
use crate::order::{Alternative, LinearOrder, PartialOrder, PartialProfile, Profile};
use crate::rules::{evaluate, evaluate_ballots, scoring_totals, VotingRuleSpec, WeightedMajorityGraph};

/// Exact cover by 3-sets over the universe `{0, .., q-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct X3CInstance {
    q: usize,
    sets: Vec<[usize; 3]>,
}

impl X3CInstance {
    pub fn new(q: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if q == 0 || !q.is_multiple_of(3) {
            return Err(Error::Invalid(format!("universe size {q} is not a positive multiple of 3")));
        }
        for (j, s) in sets.iter().enumerate() {
            if s.iter().any(|&x| x >= q) {
                return Err(Error::Invalid(format!("set {} has an element outside the universe", j + 1)));
            }
            if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
                return Err(Error::Invalid(format!("set {} repeats an element", j + 1)));
            }
        }
        let sets = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        Ok(X3CInstance { q, sets })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    /// Indices of sets forming an exact cover, found by exhaustive search
    /// branching on the smallest uncovered element.
    pub fn exact_cover(&self) -> Option<Vec<usize>> {
        fn search(sets: &[[usize; 3]], q: usize, covered: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
            let Some(first) = (0..q).find(|&x| !covered[x]) else {
                return true;
            };
            for (j, s) in sets.iter().enumerate() {
                if s.contains(&first) && s.iter().all(|&x| !covered[x]) {
                    s.iter().for_each(|&x| covered[x] = true);
                    chosen.push(j);
                    if search(sets, q, covered, chosen) {
                        return true;
                    }
                    chosen.pop();
                    s.iter().for_each(|&x| covered[x] = false);
                }
            }
            false
        }
        let mut chosen = Vec::new();
        search(&self.sets, self.q, &mut vec![false; self.q], &mut chosen).then_some(chosen)
    }

    pub fn is_solvable(&self) -> bool {
        self.exact_cover().is_some()
    }
}

/// Input to the domination problem: does `u` dominate `v` for `vm`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationInstance {
    pub rule: VotingRuleSpec,
    pub pp: PartialProfile,
    pub vm: LinearOrder,
    pub v: LinearOrder,
    pub u: LinearOrder,
}

/// Is `c` the winner in some extension of `pp`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PossibleWinnerInstance {
    pub rule: VotingRuleSpec,
    pub pp: PartialProfile,
    pub c: Alternative,
}

/// Score bookkeeping of a generated Borda instance.
///
/// Scores are over `Q`: the original orders behind `P_1`, the padding, and
/// the manipulator's vote.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BordaCertificate {
    /// Extra copies added to every padding count to keep them nonnegative.
    pub shift: i64,
    pub copies_c: i64,
    pub copies_w: i64,
    pub copies_v: Vec<i64>,
    pub w_minus_c: i64,
    pub c_minus_v: Vec<i64>,
}

impl BordaCertificate {
    /// `s(Q,w) - s(Q,c) = 4q/3` and `s(Q,c) - s(Q,v_i) = 1` for every `i`.
    pub fn holds(&self) -> bool {
        let q = self.c_minus_v.len() as i64;
        self.w_minus_c == 4 * q / 3 && self.c_minus_v.iter().all(|&x| x == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BordaConstruction {
    pub instance: DominationInstance,
    pub certificate: BordaCertificate,
}

/// Alternative indices used by the Borda construction.
pub mod borda_layout {
    use crate::order::Alternative;

    pub const C: Alternative = Alternative::new(0);
    pub const W: Alternative = Alternative::new(1);

    pub fn v(i: usize) -> Alternative {
        Alternative::new(2 + i)
    }

    pub fn d(q: usize) -> Alternative {
        Alternative::new(q + 2)
    }
}

fn ascending_except(m: usize, skip: &[usize]) -> impl Iterator<Item = usize> + '_ {
    (0..m).filter(move |x| !skip.contains(x))
}

/// The pair `W_a = {[a ≻ d ≻ Others], [Rev(Others) ≻ a ≻ d]}`.
fn padding_pair(m: usize, a: usize, d: usize) -> [LinearOrder; 2] {
    let others: Vec<usize> = ascending_except(m, &[a, d]).collect();
    let first = [a, d].into_iter().chain(others.iter().copied()).collect();
    let second = others.iter().rev().copied().chain([a, d]).collect();
    [LinearOrder::new(first).expect("permutation"), LinearOrder::new(second).expect("permutation")]
}

/// Builds the Borda domination instance whose answer is the solvability of `x`.
pub fn gen_borda_domination(x: &X3CInstance) -> Result<BordaConstruction> {
    use borda_layout::{C, W};
    let q = x.q();
    let m = q + 3;
    let t = x.sets().len() as i64;
    let (c, w, d) = (C.index(), W.index(), borda_layout::d(q).index());
    let vs: Vec<usize> = (0..q).map(|i| borda_layout::v(i).index()).collect();

    let mut originals = Vec::new();
    let mut partials = Vec::new();
    for set in x.sets() {
        let s: Vec<usize> = set.iter().map(|&i| vs[i]).collect();
        let mut head = vec![w];
        head.extend(&s);
        head.push(d);
        let ranking: Vec<usize> = head.iter().copied().chain(ascending_except(m, &head)).collect();
        let mut pairs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = (ranking[i], ranking[j]);
                if a == w && (s.contains(&b) || b == d) {
                    continue;
                }
                pairs.push((a, b));
            }
        }
        partials.push(PartialOrder::transitive_close(pairs, m)?);
        originals.push(LinearOrder::new(ranking)?);
    }

    let vm = LinearOrder::new([w, c, d].into_iter().chain(vs.iter().copied()).collect())?;
    let u = LinearOrder::new([w, d, c].into_iter().chain(vs.iter().copied()).collect())?;
    let borda = VotingRuleSpec::Borda;
    let vector = borda.scoring_vector(m).expect("scoring rule");

    let mut q1 = originals.clone();
    q1.push(vm.clone());
    let s1 = scoring_totals(&vector, &Profile::new(m, q1)?);
    let tm = t * m as i64;
    let mut counts: Vec<(usize, i64)> = vec![(c, tm - s1[c]), (w, tm + 4 * q as i64 / 3 - s1[w])];
    counts.extend(vs.iter().map(|&v| (v, tm - 1 - s1[v])));
    let shift = counts.iter().map(|&(_, k)| -k).max().unwrap_or(0).max(0);
    for entry in &mut counts {
        entry.1 += shift;
    }

    let mut padding = Vec::new();
    for &(a, k) in &counts {
        let pair = padding_pair(m, a, d);
        for _ in 0..k {
            padding.extend(pair.iter().cloned());
        }
    }
    partials.extend(padding.iter().map(PartialOrder::from_linear));

    let mut q_all = originals;
    q_all.extend(padding);
    q_all.push(vm.clone());
    let s = scoring_totals(&vector, &Profile::new(m, q_all)?);
    let certificate = BordaCertificate {
        shift,
        copies_c: counts[0].1,
        copies_w: counts[1].1,
        copies_v: counts[2..].iter().map(|&(_, k)| k).collect(),
        w_minus_c: s[w] - s[c],
        c_minus_v: vs.iter().map(|&v| s[c] - s[v]).collect(),
    };
    let instance = DominationInstance { rule: borda, pp: PartialProfile::new(m, partials)?, v: vm.clone(), vm, u };
    Ok(BordaConstruction { instance, certificate })
}

/// Groups the WMGs of all extensions of `pp` by their winner.
pub fn wmg_partition(
    rule: &VotingRuleSpec,
    pp: &PartialProfile,
) -> Result<BTreeMap<Alternative, BTreeSet<WeightedMajorityGraph>>> {
    rule.validate(pp.m())?;
    let space = ProfileSpace::with_default_cap(&InformationSet::Partial(pp.clone()))?;
    let mut classes: BTreeMap<Alternative, BTreeSet<WeightedMajorityGraph>> = BTreeMap::new();
    space.for_each(|ballots| {
        let winner = evaluate_ballots(rule, pp.m(), ballots);
        classes.entry(winner).or_default().insert(WeightedMajorityGraph::of_ballots(pp.m(), ballots));
        ControlFlow::Continue(())
    });
    Ok(classes)
}

/// Some profile whose WMG is `g`.
///
/// Odd graphs start from one identity ballot. Each remaining `+2` on `(a, b)`
/// is a ballot pair `[a ≻ b ≻ Others]`, `[Rev(Others) ≻ a ≻ b]`, which
/// cancels on every other pair.
pub fn profile_with_wmg(g: &WeightedMajorityGraph) -> Result<Profile> {
    let m = g.m();
    let parity = g
        .parity()
        .ok_or_else(|| Error::Invalid("graph has entries of mixed parity".into()))?;
    let mut votes = Vec::new();
    let mut residual = g.clone();
    if parity == 1 {
        let base = LinearOrder::identity(m);
        residual = &residual + &WeightedMajorityGraph::of_ballots(m, &[&base.reversed()]);
        votes.push(base);
    }
    for a in 0..m {
        for b in a + 1..m {
            let w = residual.get(a, b);
            let (x, y) = if w > 0 { (a, b) } else { (b, a) };
            let others: Vec<usize> = ascending_except(m, &[x, y]).collect();
            let first = LinearOrder::new([x, y].into_iter().chain(others.iter().copied()).collect())?;
            let second = LinearOrder::new(others.iter().rev().copied().chain([x, y]).collect())?;
            for _ in 0..w.abs() / 2 {
                votes.push(first.clone());
                votes.push(second.clone());
            }
        }
    }
    if votes.is_empty() {
        let base = LinearOrder::identity(m);
        votes.push(base.reversed());
        votes.push(base);
    }
    Profile::new(m, votes)
}

fn check_pw_parameters(pw: &PossibleWinnerInstance, d_star: Alternative, cprime: &[Alternative]) -> Result<()> {
    let m = pw.pp.m();
    if !pw.rule.is_wmg_based() {
        return Err(Error::Invalid(format!("rule {} is not WMG-based", pw.rule)));
    }
    for &a in cprime.iter().chain([&pw.c, &d_star]) {
        if a.index() >= m {
            return Err(Error::AlternativeOutOfRange { index: a.index(), m });
        }
    }
    if cprime.is_empty() {
        return Err(Error::Invalid("C' must be nonempty".into()));
    }
    if d_star == pw.c || cprime.contains(&d_star) {
        return Err(Error::Invalid("d* must lie outside C' and differ from c".into()));
    }
    if cprime.contains(&pw.c) {
        return Err(Error::Invalid("C' must not contain c".into()));
    }
    let distinct: BTreeSet<_> = cprime.iter().collect();
    if distinct.len() != cprime.len() {
        return Err(Error::Invalid("C' repeats an alternative".into()));
    }
    Ok(())
}

/// `W = [d* ≻ c ≻ C' ≻ Others]` and `U = [d* ≻ C' ≻ c ≻ Others]`.
fn pw_votes(m: usize, c: Alternative, d_star: Alternative, cprime: &[Alternative]) -> (LinearOrder, LinearOrder) {
    let mut block: Vec<usize> = cprime.iter().map(|a| a.index()).collect();
    block.sort_unstable();
    let mut head = vec![d_star.index(), c.index()];
    head.extend(&block);
    let others: Vec<usize> = ascending_except(m, &head).collect();
    let w = head.iter().chain(&others).copied().collect();
    let u = [d_star.index()].into_iter().chain(block).chain([c.index()]).chain(others).collect();
    (LinearOrder::new(w).expect("permutation"), LinearOrder::new(u).expect("permutation"))
}

/// Appends `Rev(W)` to the profile; the manipulator votes `V = W` truthfully
/// and the question is whether `U` dominates it.
pub fn pw1_to_domination(
    pw: &PossibleWinnerInstance,
    d_star: Alternative,
    cprime: &[Alternative],
) -> Result<DominationInstance> {
    check_pw_parameters(pw, d_star, cprime)?;
    let m = pw.pp.m();
    let (w, u) = pw_votes(m, pw.c, d_star, cprime);
    let mut pp = pw.pp.clone();
    pp.push(PartialOrder::from_linear(&w.reversed()))?;
    Ok(DominationInstance { rule: pw.rule.clone(), pp, vm: w.clone(), v: w, u })
}

/// Same profile as [`pw1_to_domination`], posed as a dominating
/// manipulation question for `vm = W`.
pub fn pw2_to_dominating_manipulation(
    pw: &PossibleWinnerInstance,
    d_star: Alternative,
    cprime: &[Alternative],
) -> Result<(VotingRuleSpec, PartialProfile, LinearOrder)> {
    let inst = pw1_to_domination(pw, d_star, cprime)?;
    Ok((inst.rule, inst.pp, inst.vm))
}

/// Which family of possible-winner instances to check membership in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PwLevel {
    One,
    Two,
}

/// Checks the conditions on the WMG partition `R`:
///
/// 1. every `G ∈ R_c` has `r(G + G_{C'}) = d*`;
/// 2. every `G ∈ R_{c'}`, `c' ≠ c`, has `r(G + G_{C'}) = c'`;
/// 3. `R_{c'}` is empty for `c' ∈ C'`;
///
/// and at [`PwLevel::Two`] also that `R_{c'}` is empty for every
/// `c' ∉ {c, d*}`.
pub fn verify_pw_conditions(
    pw: &PossibleWinnerInstance,
    d_star: Alternative,
    cprime: &[Alternative],
    level: PwLevel,
) -> Result<bool> {
    check_pw_parameters(pw, d_star, cprime)?;
    let m = pw.pp.m();
    let partition = wmg_partition(&pw.rule, &pw.pp)?;
    let shift = WeightedMajorityGraph::shift_graph(m, pw.c, cprime);
    if cprime.iter().any(|a| partition.contains_key(a)) {
        return Ok(false);
    }
    if level == PwLevel::Two && partition.keys().any(|&a| a != pw.c && a != d_star) {
        return Ok(false);
    }
    for (&winner, graphs) in &partition {
        let expected = if winner == pw.c { d_star } else { winner };
        for g in graphs {
            if evaluate(&pw.rule, &profile_with_wmg(&(g + &shift))?) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::{dominates, find_dominating_manipulation};
    use crate::extensions::possible_winners;
    use crate::rules::{evaluate_wmg, weighted_majority_graph};

    fn a(i: usize) -> Alternative {
        Alternative::new(i)
    }

    fn lo(r: &[usize]) -> LinearOrder {
        LinearOrder::new(r.to_vec()).unwrap()
    }

    fn po(pairs: &[(usize, usize)], m: usize) -> PartialOrder {
        PartialOrder::transitive_close(pairs.iter().copied(), m).unwrap()
    }

    fn borda_dominates(x: &X3CInstance) -> bool {
        let inst = gen_borda_domination(x).unwrap().instance;
        dominates(&inst.rule, &InformationSet::Partial(inst.pp), &inst.vm, &inst.u, &inst.v)
            .unwrap()
            .dominates
    }

    #[test]
    fn x3c_validation() {
        assert!(X3CInstance::new(4, vec![]).is_err());
        assert!(X3CInstance::new(0, vec![]).is_err());
        assert!(X3CInstance::new(3, vec![[0, 1, 3]]).is_err());
        assert!(X3CInstance::new(3, vec![[0, 1, 1]]).is_err());
        assert_eq!(X3CInstance::new(3, vec![[2, 0, 1]]).unwrap().sets(), &[[0, 1, 2]]);
    }

    #[test]
    fn exact_cover_search() {
        let yes = X3CInstance::new(6, vec![[0, 1, 2], [1, 3, 4], [3, 4, 5]]).unwrap();
        assert_eq!(yes.exact_cover(), Some(vec![0, 2]));
        let no = X3CInstance::new(6, vec![[0, 1, 2], [1, 3, 4], [2, 4, 5]]).unwrap();
        assert_eq!(no.exact_cover(), None);
        assert!(X3CInstance::new(3, vec![[0, 1, 2]; 3]).unwrap().is_solvable());
        assert!(!X3CInstance::new(3, vec![]).unwrap().is_solvable());
    }

    #[test]
    fn borda_construction_shape() {
        let x = X3CInstance::new(3, vec![[0, 1, 2]; 3]).unwrap();
        let built = gen_borda_domination(&x).unwrap();
        let inst = &built.instance;
        assert_eq!(inst.pp.m(), 6);
        for o in &inst.pp.entries()[..3] {
            assert_eq!(o.undetermined_pairs(), 4);
            assert_eq!(crate::extensions::count_linear_extensions(o), 5);
        }
        assert!(inst.pp.entries()[3..].iter().all(|o| o.undetermined_pairs() == 0));
        assert_eq!(inst.vm, lo(&[1, 0, 5, 2, 3, 4]));
        assert_eq!(inst.u, lo(&[1, 5, 0, 2, 3, 4]));
        assert_eq!(inst.v, inst.vm);
        let cert = &built.certificate;
        assert_eq!(cert.w_minus_c, 4);
        assert!(cert.holds());
        assert_eq!((cert.shift, cert.copies_c, cert.copies_w), (0, 14, 2));
        assert_eq!(cert.copies_v, vec![3, 7, 11]);
        assert_eq!(inst.pp.len(), 3 + 2 * (14 + 2 + 3 + 7 + 11));
    }

    #[test]
    fn padding_pair_scores() {
        let m = 5;
        let pair = padding_pair(m, 1, 4);
        let s = scoring_totals(&VotingRuleSpec::Borda.scoring_vector(m).unwrap(), &Profile::new(m, pair.to_vec()).unwrap());
        assert_eq!(s, vec![4, 5, 4, 4, 3]);
    }

    #[test]
    fn negative_counts_are_shifted() {
        // a single set: its members outscore the tm - 1 target already
        let x = X3CInstance::new(6, vec![[0, 1, 2]]).unwrap();
        let built = gen_borda_domination(&x).unwrap();
        assert!(built.certificate.shift > 0);
        assert!(built.certificate.holds());
        let all = [built.certificate.copies_c, built.certificate.copies_w]
            .into_iter()
            .chain(built.certificate.copies_v.iter().copied());
        assert!(all.into_iter().all(|k| k >= 0));
    }

    #[test]
    fn borda_reduction_tracks_solvability() {
        let yes = X3CInstance::new(3, vec![[0, 1, 2]; 3]).unwrap();
        assert!(borda_dominates(&yes));
        let no = X3CInstance::new(6, vec![[0, 1, 2], [1, 3, 4], [2, 4, 5]]).unwrap();
        assert!(!borda_dominates(&no));
        let yes6 = X3CInstance::new(6, vec![[0, 1, 2], [1, 3, 4], [3, 4, 5]]).unwrap();
        assert!(borda_dominates(&yes6));
    }

    #[test]
    fn d_never_wins() {
        let x = X3CInstance::new(3, vec![[0, 1, 2]; 4]).unwrap();
        let inst = gen_borda_domination(&x).unwrap().instance;
        let info = InformationSet::Partial(inst.pp.clone());
        let d = borda_layout::d(3);
        for vote in [&inst.v, &inst.u] {
            assert!(!possible_winners(&inst.rule, &info, Some(vote)).unwrap().contains(&d));
        }
    }

    #[test]
    fn wmg_partition_examples() {
        let fixed = PartialProfile::from_profile(&Profile::from_votes(vec![lo(&[0, 1, 2])]).unwrap());
        let parts = wmg_partition(&VotingRuleSpec::Plurality, &fixed).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&a(0)].len(), 1);

        let open = PartialProfile::unknown(2, 1).unwrap();
        let parts = wmg_partition(&VotingRuleSpec::Plurality, &open).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&a(0)].iter().next().unwrap().get(0, 1), 1);
        assert_eq!(parts[&a(1)].iter().next().unwrap().get(0, 1), -1);

        let compromise = PartialProfile::new(3, vec![po(&[(0, 1), (1, 2)], 3), po(&[(0, 2), (1, 2)], 3)]).unwrap();
        let parts = wmg_partition(&VotingRuleSpec::Plurality, &compromise).unwrap();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![a(0)]);
        assert_eq!(parts[&a(0)].len(), 2);
    }

    #[test]
    fn synthesized_profiles_reproduce_graphs() {
        let p = Profile::from_votes(vec![lo(&[2, 0, 1, 3]), lo(&[1, 3, 0, 2]), lo(&[3, 2, 1, 0])]).unwrap();
        let g = weighted_majority_graph(&p);
        assert_eq!(weighted_majority_graph(&profile_with_wmg(&g).unwrap()), g);
        let shifted = &g + &WeightedMajorityGraph::shift_graph(4, a(0), &[a(1), a(3)]);
        assert_eq!(weighted_majority_graph(&profile_with_wmg(&shifted).unwrap()), shifted);
        let zero = WeightedMajorityGraph::zero(3);
        assert_eq!(profile_with_wmg(&zero).unwrap().len(), 2);
        let mixed = WeightedMajorityGraph::from_matrix(vec![vec![0, 1, 2], vec![-1, 0, 0], vec![-2, 0, 0]]).unwrap();
        assert!(profile_with_wmg(&mixed).is_err());
        for rule in [VotingRuleSpec::Copeland, VotingRuleSpec::Maximin, VotingRuleSpec::RankedPairs] {
            assert_eq!(evaluate(&rule, &profile_with_wmg(&shifted).unwrap()), evaluate_wmg(&rule, &shifted).unwrap());
        }
    }

    /// Copeland, `c = c2`, `d* = c1`, `C' = {c3}`, one ballot with `c1 ≻ c3`.
    fn copeland_pw() -> PossibleWinnerInstance {
        PossibleWinnerInstance {
            rule: VotingRuleSpec::Copeland,
            pp: PartialProfile::new(3, vec![po(&[(0, 2)], 3)]).unwrap(),
            c: a(1),
        }
    }

    #[test]
    fn pw_transform_structure() {
        let pw = copeland_pw();
        let inst = pw1_to_domination(&pw, a(0), &[a(2)]).unwrap();
        assert_eq!(inst.pp.len(), pw.pp.len() + 1);
        assert_eq!(inst.vm, lo(&[0, 1, 2]));
        assert_eq!(inst.u, lo(&[0, 2, 1]));
        assert_eq!(inst.pp.entries()[1].to_linear(), Some(lo(&[2, 1, 0])));

        let (rule, pp, vm) = pw2_to_dominating_manipulation(&pw, a(0), &[a(2)]).unwrap();
        assert_eq!((rule, pp, vm), (inst.rule, inst.pp, inst.vm));
    }

    #[test]
    fn pw_transform_graph_identities() {
        let pw = PossibleWinnerInstance {
            rule: VotingRuleSpec::Copeland,
            pp: PartialProfile::new(4, vec![po(&[(0, 1)], 4), po(&[(2, 3), (1, 3)], 4)]).unwrap(),
            c: a(2),
        };
        let cprime = [a(1), a(3)];
        let inst = pw1_to_domination(&pw, a(0), &cprime).unwrap();
        let rev = inst.pp.entries().last().unwrap().to_linear().unwrap();
        let shift = WeightedMajorityGraph::shift_graph(4, pw.c, &cprime);
        for p in crate::extensions::profile_extensions(&pw.pp) {
            let base = weighted_majority_graph(&p);
            let mut with_v = p.with_vote(&rev);
            with_v.push(inst.v.clone()).unwrap();
            assert_eq!(weighted_majority_graph(&with_v), base);
            let mut with_u = p.with_vote(&rev);
            with_u.push(inst.u.clone()).unwrap();
            assert_eq!(weighted_majority_graph(&with_u), &base + &shift);
        }
    }

    #[test]
    fn pw_parameter_errors() {
        let pw = copeland_pw();
        assert!(pw1_to_domination(&pw, a(0), &[]).is_err());
        assert!(pw1_to_domination(&pw, a(1), &[a(2)]).is_err());
        assert!(pw1_to_domination(&pw, a(0), &[a(1)]).is_err());
        assert!(pw1_to_domination(&pw, a(0), &[a(0)]).is_err());
        assert!(pw1_to_domination(&pw, a(0), &[a(5)]).is_err());
        let borda = PossibleWinnerInstance { rule: VotingRuleSpec::Borda, ..pw };
        assert!(pw1_to_domination(&borda, a(0), &[a(2)]).is_err());
        assert!(verify_pw_conditions(&borda, a(0), &[a(2)], PwLevel::One).is_err());
    }

    #[test]
    fn verify_pw_examples() {
        let pw = copeland_pw();
        assert!(verify_pw_conditions(&pw, a(0), &[a(2)], PwLevel::One).unwrap());
        assert!(verify_pw_conditions(&pw, a(0), &[a(2)], PwLevel::Two).unwrap());

        // an empty ballot lets c3 win
        let open = PossibleWinnerInstance { pp: PartialProfile::unknown(3, 1).unwrap(), ..copeland_pw() };
        assert!(!verify_pw_conditions(&open, a(0), &[a(2)], PwLevel::One).unwrap());

        // c4 is a third realised winner outside C'
        let pw4 = PossibleWinnerInstance {
            rule: VotingRuleSpec::Copeland,
            pp: PartialProfile::new(4, vec![po(&[(0, 2), (3, 2)], 4)]).unwrap(),
            c: a(1),
        };
        let parts = wmg_partition(&pw4.rule, &pw4.pp).unwrap();
        assert!(parts.contains_key(&a(3)));
        assert!(!verify_pw_conditions(&pw4, a(0), &[a(2)], PwLevel::Two).unwrap());
    }

    #[test]
    fn pw_reductions_answer_possible_winner() {
        let pw = copeland_pw();
        assert!(possible_winners(&pw.rule, &InformationSet::Partial(pw.pp.clone()), None).unwrap().contains(&pw.c));
        let inst = pw1_to_domination(&pw, a(0), &[a(2)]).unwrap();
        let info = InformationSet::Partial(inst.pp.clone());
        assert!(dominates(&inst.rule, &info, &inst.vm, &inst.u, &inst.v).unwrap().dominates);
        assert!(find_dominating_manipulation(&inst.rule, &info, &inst.vm).unwrap().is_some());

        // c2 can never win once c1 ≻ c2 ≻ c3 is fixed
        let fixed = PossibleWinnerInstance { pp: PartialProfile::new(3, vec![po(&[(0, 1), (1, 2)], 3)]).unwrap(), ..pw };
        assert!(verify_pw_conditions(&fixed, a(0), &[a(2)], PwLevel::Two).unwrap());
        let inst = pw1_to_domination(&fixed, a(0), &[a(2)]).unwrap();
        let info = InformationSet::Partial(inst.pp.clone());
        assert!(!dominates(&inst.rule, &info, &inst.vm, &inst.u, &inst.v).unwrap().dominates);
        assert_eq!(find_dominating_manipulation(&inst.rule, &info, &inst.vm).unwrap(), None);
    }
}
