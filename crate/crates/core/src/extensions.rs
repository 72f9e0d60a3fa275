//! Information sets and brute-force enumeration of their member profiles.
//!
//! Everything here enumerates in lexicographic order: extensions of a single
//! partial order by their ranking sequence, and profiles as the Cartesian
//! product with the first ballot most significant.

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::order::{Alternative, LinearOrder, PartialOrder, PartialProfile, Profile};
use crate::rules::{evaluate_ballots, VotingRuleSpec};

/// Largest number of profiles the brute-force tier will enumerate.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// The set `E` of non-manipulator profiles the manipulator considers possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InformationSet {
    /// `E = {P}`.
    Complete(Profile),
    /// `E = F_n`: every `n`-profile over `m` alternatives.
    NoInformation { m: usize, n: usize },
    /// Every `n`-profile whose winner under `rule` is `winner`.
    WinnerOnly { rule: VotingRuleSpec, winner: Alternative, m: usize, n: usize },
    /// Every extension of a profile of partial orders.
    Partial(PartialProfile),
}

impl InformationSet {
    pub fn m(&self) -> usize {
        match self {
            InformationSet::Complete(p) => p.m(),
            InformationSet::NoInformation { m, .. } | InformationSet::WinnerOnly { m, .. } => *m,
            InformationSet::Partial(pp) => pp.m(),
        }
    }

    /// Number of non-manipulators.
    pub fn n(&self) -> usize {
        match self {
            InformationSet::Complete(p) => p.len(),
            InformationSet::NoInformation { n, .. } | InformationSet::WinnerOnly { n, .. } => *n,
            InformationSet::Partial(pp) => pp.len(),
        }
    }

    /// Profiles visited by enumeration; for `WinnerOnly` this is the size of
    /// `F_n` before filtering.
    pub fn enumeration_size(&self) -> u128 {
        match self {
            InformationSet::Complete(_) => 1,
            InformationSet::NoInformation { m, n } | InformationSet::WinnerOnly { m, n, .. } => {
                checked_pow(factorial(*m), *n)
            }
            InformationSet::Partial(pp) => pp
                .entries()
                .iter()
                .map(count_linear_extensions)
                .fold(1u128, |acc, c| acc.saturating_mul(c)),
        }
    }
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

fn checked_pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Number of linear extensions, by memoised counting over down-sets.
pub fn count_linear_extensions(po: &PartialOrder) -> u128 {
    let m = po.m();
    if po.is_empty() {
        return factorial(m);
    }
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let above: Vec<u64> = (0..m).map(|a| po.above_mask(Alternative::new(a))).collect();
    let mut memo: HashMap<u64, u128> = HashMap::new();
    fn go(placed: u64, full: u64, above: &[u64], memo: &mut HashMap<u64, u128>) -> u128 {
        if placed == full {
            return 1;
        }
        if let Some(&c) = memo.get(&placed) {
            return c;
        }
        let mut total = 0u128;
        for (a, &up) in above.iter().enumerate() {
            if placed >> a & 1 == 0 && up & !placed == 0 {
                total = total.saturating_add(go(placed | 1 << a, full, above, memo));
            }
        }
        memo.insert(placed, total);
        total
    }
    go(0, full, &above, &mut memo)
}

/// Every linear order extending `po`, in lexicographic order of rankings.
pub fn linear_extensions(po: &PartialOrder) -> Vec<LinearOrder> {
    let m = po.m();
    let above: Vec<u64> = (0..m).map(|a| po.above_mask(Alternative::new(a))).collect();
    let mut out = Vec::new();
    let mut ranking = Vec::with_capacity(m);
    fn go(placed: u64, ranking: &mut Vec<usize>, above: &[u64], out: &mut Vec<LinearOrder>) {
        if ranking.len() == above.len() {
            out.push(LinearOrder::new(ranking.clone()).expect("permutation"));
            return;
        }
        for (a, &up) in above.iter().enumerate() {
            if placed >> a & 1 == 0 && up & !placed == 0 {
                ranking.push(a);
                go(placed | 1 << a, ranking, above, out);
                ranking.pop();
            }
        }
    }
    go(0, &mut ranking, &above, &mut out);
    out
}

/// The lexicographically smallest extension of `po` with `a` on top
/// (`at_top`) or at the bottom. `a` must be assignable to that end.
pub fn extension_with_end(po: &PartialOrder, a: Alternative, at_top: bool) -> LinearOrder {
    let m = po.m();
    let mut ranking = Vec::with_capacity(m);
    let mut placed = 0u64;
    if at_top {
        debug_assert!(po.can_rank_top(a));
        ranking.push(a.index());
        placed |= 1 << a.index();
    } else {
        debug_assert!(po.can_rank_bottom(a));
    }
    let target = if at_top { m } else { m - 1 };
    while ranking.len() < target {
        let next = (0..m)
            .find(|&x| {
                placed >> x & 1 == 0
                    && (at_top || x != a.index())
                    && po.above_mask(Alternative::new(x)) & !placed == 0
            })
            .expect("partial order is acyclic");
        ranking.push(next);
        placed |= 1 << next;
    }
    if !at_top {
        ranking.push(a.index());
    }
    LinearOrder::new(ranking).expect("permutation")
}

pub fn profile_extensions(pp: &PartialProfile) -> Vec<Profile> {
    ProfileSpace::new(&InformationSet::Partial(pp.clone()), u128::MAX)
        .expect("uncapped")
        .profiles()
        .collect()
}

/// A materialised information set: the per-ballot choice lists whose
/// Cartesian product (optionally filtered by winner) is `E`.
#[derive(Clone, Debug)]
pub struct ProfileSpace {
    m: usize,
    choices: Vec<Vec<LinearOrder>>,
    filter: Option<(VotingRuleSpec, Alternative)>,
    size: u128,
}

impl ProfileSpace {
    pub fn new(info: &InformationSet, cap: u128) -> Result<Self> {
        let size = info.enumeration_size();
        if size > cap {
            return Err(Error::TooLarge { count: size, cap });
        }
        let m = info.m();
        let (choices, filter) = match info {
            InformationSet::Complete(p) => (p.votes().iter().map(|v| vec![v.clone()]).collect(), None),
            InformationSet::NoInformation { n, .. } => (vec![all_orders(m); *n], None),
            InformationSet::WinnerOnly { rule, winner, n, .. } => {
                rule.validate(m)?;
                (vec![all_orders(m); *n], Some((rule.clone(), *winner)))
            }
            InformationSet::Partial(pp) => (pp.entries().iter().map(linear_extensions).collect(), None),
        };
        Ok(ProfileSpace { m, choices, filter, size })
    }

    pub fn with_default_cap(info: &InformationSet) -> Result<Self> {
        Self::new(info, DEFAULT_CAP)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.choices.len()
    }

    /// Profiles visited (before any winner filter).
    pub fn enumeration_size(&self) -> u128 {
        self.size
    }

    /// Per-ballot extension lists.
    pub fn choices(&self) -> &[Vec<LinearOrder>] {
        &self.choices
    }

    /// Calls `f` on each member profile in enumeration order until it breaks.
    pub fn for_each<'a, F>(&'a self, mut f: F)
    where
        F: FnMut(&[&'a LinearOrder]) -> ControlFlow<()>,
    {
        let n = self.choices.len();
        if self.choices.iter().any(Vec::is_empty) {
            return;
        }
        let mut idx = vec![0usize; n];
        let mut buf: Vec<&'a LinearOrder> = self.choices.iter().map(|c| &c[0]).collect();
        loop {
            let keep = match &self.filter {
                Some((rule, winner)) => evaluate_ballots(rule, self.m, &buf) == *winner,
                None => true,
            };
            if keep && f(&buf).is_break() {
                return;
            }
            // odometer, last ballot fastest
            let mut k = n;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < self.choices[k].len() {
                    buf[k] = &self.choices[k][idx[k]];
                    break;
                }
                idx[k] = 0;
                buf[k] = &self.choices[k][0];
            }
        }
    }

    /// Owned member profiles in enumeration order.
    pub fn profiles(&self) -> impl Iterator<Item = Profile> + '_ {
        let mut out = Vec::new();
        self.for_each(|ballots| {
            let votes = ballots.iter().map(|&v| v.clone()).collect();
            out.push(Profile::new(self.m, votes).expect("same universe"));
            ControlFlow::Continue(())
        });
        out.into_iter()
    }
}

fn all_orders(m: usize) -> Vec<LinearOrder> {
    linear_extensions(&PartialOrder::empty(m).expect("m within bitset range"))
}

/// All member profiles of `info`, refusing sets above [`DEFAULT_CAP`].
pub fn enumerate_information_set(info: &InformationSet) -> Result<Vec<Profile>> {
    Ok(ProfileSpace::with_default_cap(info)?.profiles().collect())
}

/// `{ r(P ∪ {v}) : P ∈ E }`, or `{ r(P) }` without a manipulator vote.
pub fn possible_winners(
    rule: &VotingRuleSpec,
    info: &InformationSet,
    manipulator_vote: Option<&LinearOrder>,
) -> Result<BTreeSet<Alternative>> {
    let space = ProfileSpace::with_default_cap(info)?;
    rule.validate(space.m())?;
    let mut winners = BTreeSet::new();
    let mut buf: Vec<&LinearOrder> = Vec::with_capacity(space.n() + 1);
    space.for_each(|ballots| {
        buf.clear();
        buf.extend_from_slice(ballots);
        buf.extend(manipulator_vote);
        winners.insert(evaluate_ballots(rule, space.m(), &buf));
        ControlFlow::Continue(())
    });
    Ok(winners)
}

/// The alternative winning in every member of `E`, if there is one.
pub fn necessary_winner(
    rule: &VotingRuleSpec,
    info: &InformationSet,
    manipulator_vote: Option<&LinearOrder>,
) -> Result<Option<Alternative>> {
    let winners = possible_winners(rule, info, manipulator_vote)?;
    Ok(if winners.len() == 1 { winners.into_iter().next() } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lo(r: &[usize]) -> LinearOrder {
        LinearOrder::new(r.to_vec()).unwrap()
    }

    fn po(pairs: &[(usize, usize)], m: usize) -> PartialOrder {
        PartialOrder::transitive_close(pairs.iter().copied(), m).unwrap()
    }

    /// c1≻c2≻c3 fixed, plus a ballot knowing only that c3 is last.
    fn compromise() -> PartialProfile {
        PartialProfile::new(3, vec![po(&[(0, 1), (1, 2)], 3), po(&[(0, 2), (1, 2)], 3)]).unwrap()
    }

    /// Brute-force permutation filter.
    fn filter_count(po: &PartialOrder) -> usize {
        linear_extensions(&PartialOrder::empty(po.m()).unwrap())
            .iter()
            .filter(|v| po.is_extended_by(v))
            .count()
    }

    #[test]
    fn linear_extension_examples() {
        let exts = linear_extensions(&PartialOrder::empty(3).unwrap());
        assert_eq!(exts.len(), 6);
        let rankings: Vec<&[usize]> = exts.iter().map(|v| v.ranking()).collect();
        assert_eq!(rankings, vec![&[0, 1, 2][..], &[0, 2, 1], &[1, 0, 2], &[1, 2, 0], &[2, 0, 1], &[2, 1, 0]]);

        assert_eq!(linear_extensions(&po(&[(2, 0), (0, 1)], 3)), vec![lo(&[2, 0, 1])]);

        let exts = linear_extensions(&po(&[(0, 1)], 3));
        assert_eq!(exts.len(), 3);
        assert_eq!(exts.len(), filter_count(&po(&[(0, 1)], 3)));
    }

    #[test]
    fn independent_adjacent_swaps_double_the_count() {
        // chain 0>1>2>3>4>5>6 with k adjacent pairs left open, pairwise disjoint
        let free = [(0, 1), (2, 3), (4, 5)];
        for k in 0..=3 {
            let open = &free[..k];
            let pairs: Vec<(usize, usize)> = (0..7)
                .flat_map(|a| (a + 1..7).map(move |b| (a, b)))
                .filter(|p| !open.contains(p))
                .collect();
            let p = po(&pairs, 7);
            assert_eq!(p.undetermined_pairs(), k);
            assert_eq!(linear_extensions(&p).len(), 1 << k);
            assert_eq!(filter_count(&p), 1 << k);
            assert_eq!(count_linear_extensions(&p), 1 << k);
        }
    }

    #[test]
    fn profile_extension_examples() {
        let chain = PartialOrder::from_linear(&lo(&[0, 1, 2]));
        let two_chains = PartialProfile::new(3, vec![chain.clone(), chain.clone()]).unwrap();
        assert_eq!(profile_extensions(&two_chains).len(), 1);

        let mixed = PartialProfile::new(3, vec![PartialOrder::empty(3).unwrap(), chain]).unwrap();
        let profiles = profile_extensions(&mixed);
        assert_eq!(profiles.len(), 6);
        assert_eq!(profiles[1].votes()[0], lo(&[0, 2, 1]));
        let again = profile_extensions(&mixed);
        assert_eq!(profiles, again);
    }

    #[test]
    fn enumerate_information_set_examples() {
        let p = Profile::from_votes(vec![lo(&[1, 0])]).unwrap();
        assert_eq!(enumerate_information_set(&InformationSet::Complete(p.clone())).unwrap(), vec![p]);

        let none = InformationSet::NoInformation { m: 2, n: 2 };
        assert_eq!(none.enumeration_size(), 4);
        assert_eq!(enumerate_information_set(&none).unwrap().len(), 4);

        let winner_only = InformationSet::WinnerOnly {
            rule: VotingRuleSpec::Plurality,
            winner: Alternative::new(1),
            m: 2,
            n: 1,
        };
        let members = enumerate_information_set(&winner_only).unwrap();
        assert_eq!(members, vec![Profile::from_votes(vec![lo(&[1, 0])]).unwrap()]);
    }

    #[test]
    fn winner_only_can_be_empty() {
        // with no voters the only profile is empty and its winner is c1
        let info = InformationSet::WinnerOnly {
            rule: VotingRuleSpec::Plurality,
            winner: Alternative::new(1),
            m: 2,
            n: 0,
        };
        assert!(enumerate_information_set(&info).unwrap().is_empty());
    }

    #[test]
    fn cap_refuses_with_exact_count() {
        let info = InformationSet::NoInformation { m: 4, n: 6 };
        let err = ProfileSpace::new(&info, 1000).unwrap_err();
        assert_eq!(err, Error::TooLarge { count: 24u128.pow(6), cap: 1000 });
        let big = InformationSet::NoInformation { m: 5, n: 6 };
        assert!(matches!(enumerate_information_set(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn possible_and_necessary_winner_examples() {
        let rule = VotingRuleSpec::Plurality;
        let e = InformationSet::Partial(compromise());
        let c1 = Alternative::new(0);
        let c2 = Alternative::new(1);

        let truthful = lo(&[2, 1, 0]);
        let pw = possible_winners(&rule, &e, Some(&truthful)).unwrap();
        assert_eq!(pw.into_iter().collect::<Vec<_>>(), vec![c1]);
        assert_eq!(necessary_winner(&rule, &e, Some(&truthful)).unwrap(), Some(c1));

        let compromise_vote = lo(&[1, 2, 0]);
        let pw = possible_winners(&rule, &e, Some(&compromise_vote)).unwrap();
        assert_eq!(pw.into_iter().collect::<Vec<_>>(), vec![c1, c2]);
        assert_eq!(necessary_winner(&rule, &e, Some(&compromise_vote)).unwrap(), None);

        let p = Profile::from_votes(vec![lo(&[2, 0, 1]), lo(&[1, 2, 0])]).unwrap();
        let single = InformationSet::Complete(p.clone());
        for rule in [VotingRuleSpec::Borda, VotingRuleSpec::Stv, VotingRuleSpec::Copeland] {
            let w = crate::rules::evaluate(&rule, &p);
            assert_eq!(possible_winners(&rule, &single, None).unwrap().into_iter().collect::<Vec<_>>(), vec![w]);
            assert_eq!(necessary_winner(&rule, &single, None).unwrap(), Some(w));
        }
    }

    #[test]
    fn extension_with_end_respects_order() {
        let p = po(&[(1, 0), (2, 0)], 4);
        let top = extension_with_end(&p, Alternative::new(2), true);
        assert_eq!(top.ranking(), &[2, 1, 0, 3]);
        assert!(p.is_extended_by(&top));
        let bottom = extension_with_end(&p, Alternative::new(3), false);
        assert_eq!(bottom.ranking(), &[1, 2, 0, 3]);
        let bottom = extension_with_end(&p, Alternative::new(0), false);
        assert_eq!(bottom.ranking(), &[1, 2, 3, 0]);
        assert!(p.is_extended_by(&bottom));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_po() -> impl Strategy<Value = PartialOrder> {
            (1usize..6).prop_flat_map(|m| {
                (Just((0..m).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), m * m))
                    .prop_map(move |(perm, keep)| {
                        let mut pairs = Vec::new();
                        for i in 0..m {
                            for j in i + 1..m {
                                if keep[i * m + j] {
                                    pairs.push((perm[i], perm[j]));
                                }
                            }
                        }
                        PartialOrder::transitive_close(pairs, m).unwrap()
                    })
            })
        }

        proptest! {
            #[test]
            fn extension_count_matches_permutation_filter(p in arb_po()) {
                let exts = linear_extensions(&p);
                prop_assert_eq!(exts.len(), filter_count(&p));
                prop_assert_eq!(count_linear_extensions(&p), exts.len() as u128);
                prop_assert!(exts.windows(2).all(|w| w[0].ranking() < w[1].ranking()));
                prop_assert!(exts.iter().all(|v| p.is_extended_by(v)));
            }

            #[test]
            fn more_information_never_adds_possible_winners(
                a in arb_po(), extra in (0usize..5, 0usize..5), rule_pick in 0usize..4
            ) {
                let m = a.m();
                let b = PartialOrder::empty(m).unwrap();
                let pp = PartialProfile::new(m, vec![a.clone(), b]).unwrap();
                let rule = [VotingRuleSpec::Plurality, VotingRuleSpec::Borda, VotingRuleSpec::Copeland, VotingRuleSpec::Stv][rule_pick].clone();
                let vote = LinearOrder::identity(m);
                let before = possible_winners(&rule, &InformationSet::Partial(pp.clone()), Some(&vote)).unwrap();
                let (x, y) = (extra.0 % m, extra.1 % m);
                if x != y {
                    if let Ok(tighter) = a.with_pair(Alternative::new(x), Alternative::new(y)) {
                        let pp2 = PartialProfile::new(m, vec![tighter, pp.entries()[1].clone()]).unwrap();
                        let after = possible_winners(&rule, &InformationSet::Partial(pp2), Some(&vote)).unwrap();
                        prop_assert!(after.is_subset(&before));
                    }
                }
                let nw = necessary_winner(&rule, &InformationSet::Partial(pp), Some(&vote)).unwrap();
                prop_assert_eq!(nw.is_some(), before.len() == 1);
            }
        }
    }
}
