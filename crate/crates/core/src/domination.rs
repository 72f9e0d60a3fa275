//! Exhaustive reference solvers for domination and dominating manipulation.
//!
//! A vote `U` dominates `V` (for a manipulator with true preferences `vm`)
//! when, over every profile `P` in the information set, the winner of
//! `P ∪ {U}` is at least as good for `vm` as the winner of `P ∪ {V}`, and
//! strictly better for at least one `P`.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extensions::{linear_extensions, InformationSet, ProfileSpace, DEFAULT_CAP};
use crate::order::{LinearOrder, PartialOrder, Profile};
use crate::rules::{evaluate_ballots, VotingRuleSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationVerdict {
    pub dominates: bool,
    /// First profile (in enumeration order) where `U` is strictly better.
    pub improvement_witness: Option<Profile>,
    /// First profile where `U` is strictly worse; enumeration stops there.
    pub degradation_witness: Option<Profile>,
}

fn check_universe(info: &InformationSet, votes: &[&LinearOrder]) -> Result<()> {
    let m = info.m();
    for v in votes {
        if v.m() != m {
            return Err(Error::MixedUniverse(m, v.m()));
        }
    }
    Ok(())
}

fn to_profile(m: usize, ballots: &[&LinearOrder]) -> Profile {
    Profile::new(m, ballots.iter().map(|&v| v.clone()).collect()).expect("same universe")
}

/// Walks `E`, comparing the outcome of voting `u` against voting `v`.
///
/// Stops at the first degradation. Returns the first improvement and
/// degradation witnesses seen.
fn compare_votes(
    rule: &VotingRuleSpec,
    space: &ProfileSpace,
    vm: &LinearOrder,
    u: &LinearOrder,
    v: &LinearOrder,
    stop_at_improvement: bool,
) -> (Option<Profile>, Option<Profile>) {
    let m = space.m();
    let mut better = None;
    let mut worse = None;
    let mut buf: Vec<&LinearOrder> = Vec::with_capacity(space.n() + 1);
    space.for_each(|ballots| {
        buf.clear();
        buf.extend_from_slice(ballots);
        buf.push(u);
        let with_u = evaluate_ballots(rule, m, &buf);
        *buf.last_mut().expect("manipulator slot") = v;
        let with_v = evaluate_ballots(rule, m, &buf);
        match vm.rank(with_u).cmp(&vm.rank(with_v)) {
            Ordering::Less => {
                if better.is_none() {
                    better = Some(to_profile(m, ballots));
                    if stop_at_improvement {
                        return ControlFlow::Break(());
                    }
                }
            }
            Ordering::Greater => {
                worse = Some(to_profile(m, ballots));
                return ControlFlow::Break(());
            }
            Ordering::Equal => {}
        }
        ControlFlow::Continue(())
    });
    (better, worse)
}

/// Decides whether `u` dominates `v` by enumerating `info`.
pub fn dominates(
    rule: &VotingRuleSpec,
    info: &InformationSet,
    vm: &LinearOrder,
    u: &LinearOrder,
    v: &LinearOrder,
) -> Result<DominationVerdict> {
    check_universe(info, &[vm, u, v])?;
    rule.validate(info.m())?;
    let space = ProfileSpace::new(info, DEFAULT_CAP)?;
    let (better, worse) = compare_votes(rule, &space, vm, u, v, false);
    Ok(DominationVerdict {
        dominates: better.is_some() && worse.is_none(),
        improvement_witness: better,
        degradation_witness: worse,
    })
}

/// Some profile in `info` where voting `u` gives `vm` a strictly better
/// winner than voting `v`.
pub fn possible_improvement(
    rule: &VotingRuleSpec,
    info: &InformationSet,
    vm: &LinearOrder,
    v: &LinearOrder,
    u: &LinearOrder,
) -> Result<Option<Profile>> {
    check_universe(info, &[vm, u, v])?;
    rule.validate(info.m())?;
    let space = ProfileSpace::new(info, DEFAULT_CAP)?;
    let m = space.m();
    let mut found = None;
    let mut buf: Vec<&LinearOrder> = Vec::with_capacity(space.n() + 1);
    space.for_each(|ballots| {
        buf.clear();
        buf.extend_from_slice(ballots);
        buf.push(u);
        let with_u = evaluate_ballots(rule, m, &buf);
        *buf.last_mut().expect("manipulator slot") = v;
        let with_v = evaluate_ballots(rule, m, &buf);
        if vm.prefers(with_u, with_v) {
            found = Some(to_profile(m, ballots));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// All votes over `m` alternatives in lexicographic order.
pub fn all_votes(m: usize) -> Result<Vec<LinearOrder>> {
    Ok(linear_extensions(&PartialOrder::empty(m)?))
}

/// Vm-ranks of the truthful winners, one per member of `E`.
fn truthful_ranks(rule: &VotingRuleSpec, space: &ProfileSpace, vm: &LinearOrder) -> Vec<u16> {
    let m = space.m();
    let mut out = Vec::new();
    let mut buf: Vec<&LinearOrder> = Vec::with_capacity(space.n() + 1);
    space.for_each(|ballots| {
        buf.clear();
        buf.extend_from_slice(ballots);
        buf.push(vm);
        out.push(vm.rank(evaluate_ballots(rule, m, &buf)) as u16);
        ControlFlow::Continue(())
    });
    out
}

fn candidate_dominates(
    rule: &VotingRuleSpec,
    space: &ProfileSpace,
    vm: &LinearOrder,
    truthful: &[u16],
    u: &LinearOrder,
) -> bool {
    let m = space.m();
    let mut i = 0;
    let mut better = false;
    let mut worse = false;
    let mut buf: Vec<&LinearOrder> = Vec::with_capacity(space.n() + 1);
    space.for_each(|ballots| {
        buf.clear();
        buf.extend_from_slice(ballots);
        buf.push(u);
        let r = vm.rank(evaluate_ballots(rule, m, &buf)) as u16;
        let t = truthful[i];
        i += 1;
        if r > t {
            worse = true;
            return ControlFlow::Break(());
        }
        better |= r < t;
        ControlFlow::Continue(())
    });
    better && !worse
}

/// The lexicographically first vote dominating the truthful vote `vm`.
pub fn find_dominating_manipulation(
    rule: &VotingRuleSpec,
    info: &InformationSet,
    vm: &LinearOrder,
) -> Result<Option<LinearOrder>> {
    find_dominating_manipulation_with_jobs(rule, info, vm, 1)
}

/// As [`find_dominating_manipulation`], scanning candidate votes on up to
/// `jobs` threads. The answer does not depend on `jobs`.
pub fn find_dominating_manipulation_with_jobs(
    rule: &VotingRuleSpec,
    info: &InformationSet,
    vm: &LinearOrder,
    jobs: usize,
) -> Result<Option<LinearOrder>> {
    check_universe(info, &[vm])?;
    rule.validate(info.m())?;
    let space = ProfileSpace::new(info, DEFAULT_CAP)?;
    let truthful = truthful_ranks(rule, &space, vm);
    let candidates: Vec<LinearOrder> = all_votes(info.m())?.into_iter().filter(|u| u != vm).collect();
    let test = |u: &LinearOrder| candidate_dominates(rule, &space, vm, &truthful, u);
    if jobs <= 1 {
        return Ok(candidates.into_iter().find(|u| test(u)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(|| candidates.par_iter().find_first(|u| test(u)).cloned()))
}

/// Exhaustive immunity check under no information: the first pair
/// `(vm, u)` of distinct votes, in lexicographic order, with `u`
/// dominating `vm` over all `n`-profiles.
pub fn check_no_info_immunity(
    rule: &VotingRuleSpec,
    m: usize,
    n: usize,
) -> Result<Option<(LinearOrder, LinearOrder)>> {
    rule.validate(m)?;
    let info = InformationSet::NoInformation { m, n };
    let space = ProfileSpace::new(&info, DEFAULT_CAP)?;
    let votes = all_votes(m)?;
    let k = votes.len();

    // winners[p * k + j]: winner of profile p plus vote j
    let mut winners: Vec<u8> = Vec::with_capacity(space.enumeration_size() as usize * k);
    let mut buf: Vec<&LinearOrder> = Vec::with_capacity(n + 1);
    space.for_each(|ballots| {
        for vote in &votes {
            buf.clear();
            buf.extend_from_slice(ballots);
            buf.push(vote);
            winners.push(evaluate_ballots(rule, m, &buf).index() as u8);
        }
        ControlFlow::Continue(())
    });
    let profiles = winners.len() / k;

    for (i, vm) in votes.iter().enumerate() {
        let rank: Vec<usize> = (0..m).map(|a| vm.rank(a.into())).collect();
        for (j, u) in votes.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut better = false;
            let mut worse = false;
            for p in 0..profiles {
                let with_vm = rank[winners[p * k + i] as usize];
                let with_u = rank[winners[p * k + j] as usize];
                if with_u > with_vm {
                    worse = true;
                    break;
                }
                better |= with_u < with_vm;
            }
            if better && !worse {
                return Ok(Some((vm.clone(), u.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{Alternative, PartialProfile};
    use crate::rules::evaluate;

    fn lo(r: &[usize]) -> LinearOrder {
        LinearOrder::new(r.to_vec()).unwrap()
    }

    fn compromise() -> InformationSet {
        let fixed = PartialOrder::transitive_close([(0, 1), (1, 2)], 3).unwrap();
        let unsure = PartialOrder::transitive_close([(0, 2), (1, 2)], 3).unwrap();
        InformationSet::Partial(PartialProfile::new(3, vec![fixed, unsure]).unwrap())
    }

    #[test]
    fn identical_votes_never_dominate() {
        let e = compromise();
        for rule in [VotingRuleSpec::Plurality, VotingRuleSpec::Borda, VotingRuleSpec::Stv] {
            for u in all_votes(3).unwrap() {
                let verdict = dominates(&rule, &e, &lo(&[2, 1, 0]), &u, &u).unwrap();
                assert!(!verdict.dominates);
                assert!(verdict.improvement_witness.is_none());
            }
        }
    }

    #[test]
    fn compromise_vote_dominates() {
        let rule = VotingRuleSpec::Plurality;
        let e = compromise();
        let vm = lo(&[2, 1, 0]);
        let u = lo(&[1, 2, 0]);
        let verdict = dominates(&rule, &e, &vm, &u, &vm).unwrap();
        assert!(verdict.dominates);
        assert!(verdict.degradation_witness.is_none());
        let witness = verdict.improvement_witness.unwrap();
        assert_eq!(witness.votes(), &[lo(&[0, 1, 2]), lo(&[1, 0, 2])]);
        assert_eq!(evaluate(&rule, &witness.with_vote(&u)), Alternative::new(1));
        assert_eq!(evaluate(&rule, &witness.with_vote(&vm)), Alternative::new(0));

        let swapped = dominates(&rule, &e, &vm, &vm, &u).unwrap();
        assert!(!swapped.dominates);
        assert_eq!(swapped.degradation_witness, Some(witness));
    }

    #[test]
    fn find_dominating_manipulation_examples() {
        let vm = lo(&[2, 1, 0]);
        let found = find_dominating_manipulation(&VotingRuleSpec::Plurality, &compromise(), &vm).unwrap();
        assert_eq!(found, Some(lo(&[1, 0, 2])));

        let p = Profile::from_votes(vec![lo(&[1, 2, 0]), lo(&[2, 1, 0])]).unwrap();
        let e = InformationSet::Complete(p.clone());
        assert_eq!(find_dominating_manipulation(&VotingRuleSpec::Borda, &e, &lo(&[0, 1, 2])).unwrap(), None);

        // winner already vm's favourite
        let p = Profile::from_votes(vec![lo(&[0, 2, 1]), lo(&[1, 0, 2])]).unwrap();
        let vm = lo(&[0, 1, 2]);
        for rule in [VotingRuleSpec::Plurality, VotingRuleSpec::Copeland, VotingRuleSpec::Stv] {
            assert_eq!(evaluate(&rule, &p.with_vote(&vm)), Alternative::new(0));
            let e = InformationSet::Complete(p.clone());
            assert_eq!(find_dominating_manipulation(&rule, &e, &vm).unwrap(), None);
        }
    }

    #[test]
    fn parallel_scan_is_deterministic() {
        let vm = lo(&[2, 1, 0]);
        for jobs in [1, 2, 4] {
            let found =
                find_dominating_manipulation_with_jobs(&VotingRuleSpec::Plurality, &compromise(), &vm, jobs).unwrap();
            assert_eq!(found, Some(lo(&[1, 0, 2])));
        }
    }

    #[test]
    fn immunity_examples() {
        assert_eq!(check_no_info_immunity(&VotingRuleSpec::Borda, 3, 4).unwrap(), None);
        assert_eq!(check_no_info_immunity(&VotingRuleSpec::Copeland, 3, 3).unwrap(), None);
        assert_eq!(check_no_info_immunity(&VotingRuleSpec::Maximin, 3, 5).unwrap(), None);
    }

    #[test]
    fn immunity_check_agrees_with_dominates() {
        // the table-driven checker and the direct relation must agree pairwise
        let rule = VotingRuleSpec::Plurality;
        let info = InformationSet::NoInformation { m: 3, n: 1 };
        let votes = all_votes(3).unwrap();
        let mut first = None;
        'outer: for vm in &votes {
            for u in &votes {
                if u != vm && dominates(&rule, &info, vm, u, vm).unwrap().dominates {
                    first = Some((vm.clone(), u.clone()));
                    break 'outer;
                }
            }
        }
        assert_eq!(check_no_info_immunity(&rule, 3, 1).unwrap(), first);
    }

    #[test]
    fn errors_propagate() {
        let e = InformationSet::NoInformation { m: 5, n: 6 };
        let vm = LinearOrder::identity(5);
        assert!(matches!(dominates(&VotingRuleSpec::Borda, &e, &vm, &vm, &vm), Err(Error::TooLarge { .. })));
        assert!(matches!(
            dominates(&VotingRuleSpec::Borda, &compromise(), &LinearOrder::identity(4), &vm, &vm),
            Err(Error::MixedUniverse(3, 4))
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_instance() -> impl Strategy<Value = (InformationSet, Vec<LinearOrder>, usize)> {
            let perm = || Just(vec![0usize, 1, 2]).prop_shuffle();
            (
                proptest::collection::vec((perm(), proptest::collection::vec(any::<bool>(), 3)), 1..4),
                proptest::collection::vec(perm(), 3),
                0usize..5,
            )
                .prop_map(|(ballots, votes, rule)| {
                    let entries = ballots
                        .into_iter()
                        .map(|(p, keep)| {
                            let pairs = [(p[0], p[1]), (p[0], p[2]), (p[1], p[2])];
                            let kept = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(x, _)| x);
                            PartialOrder::transitive_close(kept, 3).unwrap()
                        })
                        .collect();
                    let pp = PartialProfile::new(3, entries).unwrap();
                    let votes = votes.into_iter().map(|v| LinearOrder::new(v).unwrap()).collect();
                    (InformationSet::Partial(pp), votes, rule)
                })
        }

        const RULES: [VotingRuleSpec; 5] = [
            VotingRuleSpec::Plurality,
            VotingRuleSpec::Borda,
            VotingRuleSpec::Copeland,
            VotingRuleSpec::Maximin,
            VotingRuleSpec::Stv,
        ];

        proptest! {
            #[test]
            fn domination_is_asymmetric_and_witnessed((e, votes, r) in arb_instance()) {
                let rule = &RULES[r];
                let (vm, u, v) = (&votes[0], &votes[1], &votes[2]);
                let uv = dominates(rule, &e, vm, u, v).unwrap();
                let vu = dominates(rule, &e, vm, v, u).unwrap();
                prop_assert!(!(uv.dominates && vu.dominates));
                prop_assert_eq!(uv.dominates, uv.improvement_witness.is_some() && uv.degradation_witness.is_none());
                if let InformationSet::Partial(pp) = &e {
                    if let Some(w) = &uv.improvement_witness {
                        prop_assert!(pp.is_extended_by(w));
                        prop_assert!(vm.prefers(evaluate(rule, &w.with_vote(u)), evaluate(rule, &w.with_vote(v))));
                    }
                    if let Some(w) = &uv.degradation_witness {
                        prop_assert!(pp.is_extended_by(w));
                        prop_assert!(vm.prefers(evaluate(rule, &w.with_vote(v)), evaluate(rule, &w.with_vote(u))));
                    }
                }
                let pi_uv = possible_improvement(rule, &e, vm, v, u).unwrap().is_some();
                let pi_vu = possible_improvement(rule, &e, vm, u, v).unwrap().is_some();
                prop_assert_eq!(uv.dominates, pi_uv && !pi_vu);
            }
        }
    }
}
