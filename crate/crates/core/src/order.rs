//! Alternatives, ballots and profiles.
//!
//! Alternatives are dense indices `0..m`. The tie-breaking order is ascending
//! index, so alternative 0 (`c1`) wins every tie it takes part in.

use std::fmt;

use crate::error::{Error, Result};

/// Partial orders keep one `u64` bitset row per alternative.
pub const MAX_ALTERNATIVES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alternative(usize);

impl Alternative {
    pub const fn new(index: usize) -> Self {
        Alternative(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }

    /// True if `self` beats `other` in the fixed tie-breaking order.
    pub fn precedes(self, other: Alternative) -> bool {
        self.0 < other.0
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0 + 1)
    }
}

impl From<usize> for Alternative {
    fn from(index: usize) -> Self {
        Alternative(index)
    }
}

/// Lowest-index alternative attaining the maximum score.
///
/// Panics on an empty slice.
pub fn tie_break_argmax(scores: &[i64]) -> Alternative {
    assert!(!scores.is_empty(), "tie_break_argmax on empty scores");
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    Alternative(best)
}

/// A complete strict ranking, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    ranking: Vec<usize>,
    rank: Vec<usize>,
}

impl LinearOrder {
    /// Validates that `ranking` is a permutation of `0..ranking.len()`.
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let m = ranking.len();
        let mut rank = vec![usize::MAX; m];
        for (pos, &a) in ranking.iter().enumerate() {
            if a >= m {
                return Err(Error::AlternativeOutOfRange { index: a, m });
            }
            if rank[a] != usize::MAX {
                return Err(Error::DuplicateAlternative(a));
            }
            rank[a] = pos;
        }
        Ok(LinearOrder { ranking, rank })
    }

    /// Like [`LinearOrder::new`] but also checks the length against `m`.
    pub fn with_m(ranking: Vec<usize>, m: usize) -> Result<Self> {
        if ranking.len() != m {
            return Err(Error::WrongLength { expected: m, found: ranking.len() });
        }
        Self::new(ranking)
    }

    pub fn identity(m: usize) -> Self {
        let ranking: Vec<usize> = (0..m).collect();
        LinearOrder { rank: ranking.clone(), ranking }
    }

    pub fn m(&self) -> usize {
        self.ranking.len()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// The alternative in position `pos` (0-based).
    pub fn at(&self, pos: usize) -> Alternative {
        Alternative(self.ranking[pos])
    }

    pub fn top(&self) -> Alternative {
        self.at(0)
    }

    pub fn bottom(&self) -> Alternative {
        self.at(self.m() - 1)
    }

    pub fn rank(&self, a: Alternative) -> usize {
        self.rank[a.0]
    }

    pub fn prefers(&self, a: Alternative, b: Alternative) -> bool {
        self.rank[a.0] < self.rank[b.0]
    }

    pub fn alternatives(&self) -> impl Iterator<Item = Alternative> + '_ {
        self.ranking.iter().map(|&a| Alternative(a))
    }

    pub fn reversed(&self) -> Self {
        let ranking: Vec<usize> = self.ranking.iter().rev().copied().collect();
        Self::new(ranking).expect("reversal of a permutation")
    }

    /// `a` first, everything else in the current relative order.
    pub fn moved_to_top(&self, a: Alternative) -> Self {
        let mut ranking = Vec::with_capacity(self.m());
        ranking.push(a.0);
        ranking.extend(self.ranking.iter().copied().filter(|&x| x != a.0));
        Self::new(ranking).expect("permutation")
    }

    /// `a` last, everything else in the current relative order.
    pub fn moved_to_bottom(&self, a: Alternative) -> Self {
        let mut ranking: Vec<usize> = self.ranking.iter().copied().filter(|&x| x != a.0).collect();
        ranking.push(a.0);
        Self::new(ranking).expect("permutation")
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.alternatives().enumerate() {
            if i > 0 {
                f.write_str("≻")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A strict partial order, stored transitively closed as bitset rows.
///
/// `below[a]` has bit `b` set iff `a ≻ b`; `above` is the transpose.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialOrder {
    m: usize,
    below: Vec<u64>,
    above: Vec<u64>,
}

impl PartialOrder {
    pub fn empty(m: usize) -> Result<Self> {
        if m > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives(m));
        }
        Ok(PartialOrder { m, below: vec![0; m], above: vec![0; m] })
    }

    /// Transitive closure of `pairs`, where `(a, b)` means `a ≻ b`.
    ///
    /// Fails with a cycle witness if the closure is not antisymmetric.
    pub fn transitive_close<I>(pairs: I, m: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut po = Self::empty(m)?;
        let mut edges = vec![0u64; m];
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= m {
                    return Err(Error::AlternativeOutOfRange { index: x, m });
                }
            }
            if a == b {
                return Err(Error::Cycle(vec![a, a]));
            }
            edges[a] |= 1 << b;
        }
        po.below.copy_from_slice(&edges);
        for k in 0..m {
            let row = po.below[k];
            for i in 0..m {
                if po.below[i] >> k & 1 == 1 {
                    po.below[i] |= row;
                }
            }
        }
        if let Some(start) = (0..m).find(|&i| po.below[i] >> i & 1 == 1) {
            return Err(Error::Cycle(shortest_cycle(&edges, start)));
        }
        po.rebuild_above();
        Ok(po)
    }

    pub fn from_linear(order: &LinearOrder) -> Self {
        let m = order.m();
        assert!(m <= MAX_ALTERNATIVES, "too many alternatives for a partial order");
        let mut po = PartialOrder { m, below: vec![0; m], above: vec![0; m] };
        let mut rest = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        for a in order.alternatives() {
            rest &= !(1 << a.index());
            po.below[a.index()] = rest;
        }
        po.rebuild_above();
        po
    }

    fn rebuild_above(&mut self) {
        self.above.iter_mut().for_each(|r| *r = 0);
        for a in 0..self.m {
            let mut row = self.below[a];
            while row != 0 {
                let b = row.trailing_zeros() as usize;
                row &= row - 1;
                self.above[b] |= 1 << a;
            }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// True iff `a ≻ b` is determined.
    pub fn prefers(&self, a: Alternative, b: Alternative) -> bool {
        self.below[a.index()] >> b.index() & 1 == 1
    }

    /// Bitset of alternatives known to be below `a`.
    pub fn below_mask(&self, a: Alternative) -> u64 {
        self.below[a.index()]
    }

    /// Bitset of alternatives known to be above `a`.
    pub fn above_mask(&self, a: Alternative) -> u64 {
        self.above[a.index()]
    }

    /// Number of determined pairs.
    pub fn len(&self) -> usize {
        self.below.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn undetermined_pairs(&self) -> usize {
        self.m * self.m.saturating_sub(1) / 2 - self.len()
    }

    /// All determined pairs `(a, b)`, `a ≻ b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for a in 0..self.m {
            for b in 0..self.m {
                if self.below[a] >> b & 1 == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The covering pairs (transitive reduction), sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter(|&(a, b)| self.below[a] & self.above[b] == 0)
            .collect()
    }

    /// Adds `a ≻ b` and re-closes.
    pub fn with_pair(&self, a: Alternative, b: Alternative) -> Result<Self> {
        let (ai, bi) = (a.index(), b.index());
        for x in [ai, bi] {
            if x >= self.m {
                return Err(Error::AlternativeOutOfRange { index: x, m: self.m });
            }
        }
        if ai == bi {
            return Err(Error::Cycle(vec![ai, ai]));
        }
        if self.prefers(b, a) {
            return Err(Error::Cycle(vec![ai, bi, ai]));
        }
        let mut po = self.clone();
        // everything above-or-equal a now beats everything below-or-equal b
        let ups = self.above[ai] | 1 << ai;
        let downs = self.below[bi] | 1 << bi;
        let mut rows = ups;
        while rows != 0 {
            let x = rows.trailing_zeros() as usize;
            rows &= rows - 1;
            po.below[x] |= downs;
        }
        po.rebuild_above();
        Ok(po)
    }

    pub fn is_extended_by(&self, order: &LinearOrder) -> bool {
        order.m() == self.m
            && (0..self.m).all(|a| {
                let mut row = self.below[a];
                let ra = order.rank(Alternative(a));
                while row != 0 {
                    let b = row.trailing_zeros() as usize;
                    row &= row - 1;
                    if order.rank(Alternative(b)) < ra {
                        return false;
                    }
                }
                true
            })
    }

    /// Some extension ranks `a` first.
    pub fn can_rank_top(&self, a: Alternative) -> bool {
        self.above[a.index()] == 0
    }

    /// Some extension ranks `a` last.
    pub fn can_rank_bottom(&self, a: Alternative) -> bool {
        self.below[a.index()] == 0
    }

    /// The unique extension, if the order is already total.
    pub fn to_linear(&self) -> Option<LinearOrder> {
        if self.undetermined_pairs() != 0 {
            return None;
        }
        let mut ranking: Vec<usize> = (0..self.m).collect();
        ranking.sort_by_key(|&a| self.above[a].count_ones());
        Some(LinearOrder::new(ranking).expect("total order"))
    }
}

/// Shortest closed walk from `start` back to itself over `edges`, neighbours
/// visited in index order.
fn shortest_cycle(edges: &[u64], start: usize) -> Vec<usize> {
    let m = edges.len();
    let mut parent = vec![usize::MAX; m];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    let mut seen = 1u64 << start;
    while let Some(x) = queue.pop_front() {
        for y in 0..m {
            if edges[x] >> y & 1 == 0 {
                continue;
            }
            if y == start {
                let mut walk = vec![start];
                let mut cur = x;
                while cur != start {
                    walk.push(cur);
                    cur = parent[cur];
                }
                walk.push(start);
                walk.reverse();
                return walk;
            }
            if seen >> y & 1 == 0 {
                seen |= 1 << y;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    vec![start, start]
}

/// An `n`-voter profile of linear orders over one universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    m: usize,
    votes: Vec<LinearOrder>,
}

impl Profile {
    pub fn new(m: usize, votes: Vec<LinearOrder>) -> Result<Self> {
        for v in &votes {
            if v.m() != m {
                return Err(Error::MixedUniverse(m, v.m()));
            }
        }
        Ok(Profile { m, votes })
    }

    /// Infers `m` from the first vote; panics on an empty list.
    pub fn from_votes(votes: Vec<LinearOrder>) -> Result<Self> {
        let m = votes.first().expect("nonempty profile").m();
        Self::new(m, votes)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.votes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.votes.is_empty()
    }

    pub fn votes(&self) -> &[LinearOrder] {
        &self.votes
    }

    pub fn into_votes(self) -> Vec<LinearOrder> {
        self.votes
    }

    pub fn push(&mut self, vote: LinearOrder) -> Result<()> {
        if vote.m() != self.m {
            return Err(Error::MixedUniverse(self.m, vote.m()));
        }
        self.votes.push(vote);
        Ok(())
    }

    /// `self ∪ {vote}`.
    pub fn with_vote(&self, vote: &LinearOrder) -> Profile {
        let mut p = self.clone();
        p.push(vote.clone()).expect("vote over the profile's universe");
        p
    }
}

/// A profile of partial orders: one disclosed relation per non-manipulator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialProfile {
    m: usize,
    entries: Vec<PartialOrder>,
}

impl PartialProfile {
    pub fn new(m: usize, entries: Vec<PartialOrder>) -> Result<Self> {
        for e in &entries {
            if e.m() != m {
                return Err(Error::MixedUniverse(m, e.m()));
            }
        }
        Ok(PartialProfile { m, entries })
    }

    /// Every ballot fully known.
    pub fn from_profile(profile: &Profile) -> Self {
        PartialProfile {
            m: profile.m(),
            entries: profile.votes().iter().map(PartialOrder::from_linear).collect(),
        }
    }

    /// `n` ballots with nothing known about any of them.
    pub fn unknown(m: usize, n: usize) -> Result<Self> {
        Ok(PartialProfile { m, entries: vec![PartialOrder::empty(m)?; n] })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[PartialOrder] {
        &self.entries
    }

    pub fn push(&mut self, po: PartialOrder) -> Result<()> {
        if po.m() != self.m {
            return Err(Error::MixedUniverse(self.m, po.m()));
        }
        self.entries.push(po);
        Ok(())
    }

    pub fn is_extended_by(&self, profile: &Profile) -> bool {
        profile.len() == self.len()
            && self.entries.iter().zip(profile.votes()).all(|(po, v)| po.is_extended_by(v))
    }
}
