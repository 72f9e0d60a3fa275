//! Voting rules over complete profiles.
//!
//! Every rule is resolute: ties are broken toward the lower alternative index.
//! Rules that only look at pairwise margins (Copeland, maximin, ranked pairs,
//! voting trees) are evaluated on the [`WeightedMajorityGraph`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::order::{tie_break_argmax, Alternative, LinearOrder, Profile};

/// A binary voting tree; leaves hold alternative indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VotingTree {
    Leaf(usize),
    Node(Box<VotingTree>, Box<VotingTree>),
}

impl VotingTree {
    /// Left-to-right balanced tree over `0..m`, left half rounded up.
    pub fn balanced(m: usize) -> VotingTree {
        assert!(m > 0, "voting tree needs at least one leaf");
        fn build(lo: usize, hi: usize) -> VotingTree {
            if hi - lo == 1 {
                return VotingTree::Leaf(lo);
            }
            let mid = lo + (hi - lo).div_ceil(2);
            VotingTree::Node(Box::new(build(lo, mid)), Box::new(build(mid, hi)))
        }
        build(0, m)
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            VotingTree::Leaf(a) => out.push(*a),
            VotingTree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    fn winner(&self, wmg: &WeightedMajorityGraph) -> Alternative {
        match self {
            VotingTree::Leaf(a) => Alternative::new(*a),
            VotingTree::Node(l, r) => wmg.pairwise_winner(l.winner(wmg), r.winner(wmg)),
        }
    }

    fn parse(s: &str) -> Result<VotingTree> {
        let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let tree = Self::parse_node(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::InvalidRule(format!("trailing input in tree {s:?}")));
        }
        Ok(tree)
    }

    fn parse_node(s: &[char], pos: &mut usize) -> Result<VotingTree> {
        let bad = || Error::InvalidRule(format!("malformed tree {:?}", s.iter().collect::<String>()));
        match s.get(*pos) {
            Some('(') => {
                *pos += 1;
                let left = Self::parse_node(s, pos)?;
                if s.get(*pos) != Some(&',') {
                    return Err(bad());
                }
                *pos += 1;
                let right = Self::parse_node(s, pos)?;
                if s.get(*pos) != Some(&')') {
                    return Err(bad());
                }
                *pos += 1;
                Ok(VotingTree::Node(Box::new(left), Box::new(right)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = *pos;
                while s.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                    *pos += 1;
                }
                let label: String = s[start..*pos].iter().collect();
                let one_based: usize = label.parse().map_err(|_| bad())?;
                if one_based == 0 {
                    return Err(Error::InvalidRule("tree leaves are 1-based".into()));
                }
                Ok(VotingTree::Leaf(one_based - 1))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for VotingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VotingTree::Leaf(a) => write!(f, "{}", a + 1),
            VotingTree::Node(l, r) => write!(f, "({l},{r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VotingRuleSpec {
    /// Positional scoring with an explicit vector, best position first.
    Scoring(Vec<i64>),
    Plurality,
    Veto,
    Borda,
    Copeland,
    Maximin,
    RankedPairs,
    Stv,
    /// `None` is the balanced tree over `c1..cm`.
    VotingTree(Option<VotingTree>),
}

impl VotingRuleSpec {
    /// The positional vector for scoring rules, `None` otherwise.
    pub fn scoring_vector(&self, m: usize) -> Option<Vec<i64>> {
        match self {
            VotingRuleSpec::Scoring(v) => Some(v.clone()),
            VotingRuleSpec::Plurality => Some((0..m).map(|i| i64::from(i == 0)).collect()),
            VotingRuleSpec::Veto => Some((0..m).map(|i| i64::from(i + 1 != m)).collect()),
            VotingRuleSpec::Borda => Some((0..m).map(|i| (m - 1 - i) as i64).collect()),
            _ => None,
        }
    }

    /// Rules whose winner is a function of the weighted majority graph alone.
    pub fn is_wmg_based(&self) -> bool {
        matches!(
            self,
            VotingRuleSpec::Copeland
                | VotingRuleSpec::Maximin
                | VotingRuleSpec::RankedPairs
                | VotingRuleSpec::VotingTree(_)
        )
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if m == 0 {
            return Err(Error::InvalidRule("no alternatives".into()));
        }
        match self {
            VotingRuleSpec::Scoring(v) => {
                if v.len() != m {
                    return Err(Error::InvalidRule(format!(
                        "scoring vector has {} entries for m = {m}",
                        v.len()
                    )));
                }
                if v.windows(2).any(|w| w[0] < w[1]) {
                    return Err(Error::InvalidRule("scoring vector must be non-increasing".into()));
                }
                if m >= 2 && v[0] <= v[m - 1] {
                    return Err(Error::InvalidRule(
                        "scoring vector must have first entry above last".into(),
                    ));
                }
                Ok(())
            }
            VotingRuleSpec::VotingTree(Some(tree)) => {
                let mut leaves = tree.leaves();
                leaves.sort_unstable();
                if leaves != (0..m).collect::<Vec<_>>() {
                    return Err(Error::InvalidRule(format!(
                        "voting tree leaves must be each of the {m} alternatives exactly once"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for VotingRuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VotingRuleSpec::Scoring(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "score:{}", parts.join(","))
            }
            VotingRuleSpec::Plurality => f.write_str("plurality"),
            VotingRuleSpec::Veto => f.write_str("veto"),
            VotingRuleSpec::Borda => f.write_str("borda"),
            VotingRuleSpec::Copeland => f.write_str("copeland"),
            VotingRuleSpec::Maximin => f.write_str("maximin"),
            VotingRuleSpec::RankedPairs => f.write_str("rankedpairs"),
            VotingRuleSpec::Stv => f.write_str("stv"),
            VotingRuleSpec::VotingTree(None) => f.write_str("tree"),
            VotingRuleSpec::VotingTree(Some(t)) => write!(f, "tree:{t}"),
        }
    }
}

impl FromStr for VotingRuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rule = match s.to_ascii_lowercase().as_str() {
            "plurality" => VotingRuleSpec::Plurality,
            "veto" => VotingRuleSpec::Veto,
            "borda" => VotingRuleSpec::Borda,
            "copeland" => VotingRuleSpec::Copeland,
            "maximin" => VotingRuleSpec::Maximin,
            "rankedpairs" | "ranked_pairs" | "ranked-pairs" => VotingRuleSpec::RankedPairs,
            "stv" => VotingRuleSpec::Stv,
            "tree" => VotingRuleSpec::VotingTree(None),
            _ => {
                if let Some(rest) = s.strip_prefix("score:") {
                    let v = rest
                        .split(',')
                        .map(|x| x.trim().parse::<i64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::InvalidRule(format!("bad scoring vector {rest:?}")))?;
                    VotingRuleSpec::Scoring(v)
                } else if let Some(rest) = s.strip_prefix("tree:") {
                    VotingRuleSpec::VotingTree(Some(VotingTree::parse(rest)?))
                } else {
                    return Err(Error::InvalidRule(format!("unknown rule {s:?}")));
                }
            }
        };
        Ok(rule)
    }
}

/// Pairwise margins `D_P(a, b)`: votes ranking `a` above `b` minus the reverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedMajorityGraph {
    m: usize,
    margin: Vec<i64>,
}

impl WeightedMajorityGraph {
    pub fn zero(m: usize) -> Self {
        WeightedMajorityGraph { m, margin: vec![0; m * m] }
    }

    pub fn of_profile(profile: &Profile) -> Self {
        let refs: Vec<&LinearOrder> = profile.votes().iter().collect();
        Self::of_ballots(profile.m(), &refs)
    }

    pub fn of_ballots(m: usize, ballots: &[&LinearOrder]) -> Self {
        let mut g = Self::zero(m);
        for v in ballots {
            let r = v.ranking();
            for i in 0..m {
                for j in i + 1..m {
                    let (a, b) = (r[i], r[j]);
                    g.margin[a * m + b] += 1;
                    g.margin[b * m + a] -= 1;
                }
            }
        }
        g
    }

    /// Builds a graph from an explicit matrix, checking antisymmetry.
    pub fn from_matrix(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        let mut g = Self::zero(m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Invalid("margin matrix must be square".into()));
            }
            for (j, &w) in row.iter().enumerate() {
                g.margin[i * m + j] = w;
            }
        }
        for i in 0..m {
            if g.get(i, i) != 0 {
                return Err(Error::Invalid("margin matrix diagonal must be zero".into()));
            }
            for j in 0..m {
                if g.get(i, j) != -g.get(j, i) {
                    return Err(Error::Invalid("margin matrix must be antisymmetric".into()));
                }
            }
        }
        Ok(g)
    }

    /// `G_{C'}`: a weight-2 edge `c' → c` for every `c' ∈ cprime`.
    pub fn shift_graph(m: usize, c: Alternative, cprime: &[Alternative]) -> Self {
        let mut g = Self::zero(m);
        for &x in cprime {
            g.margin[x.index() * m + c.index()] += 2;
            g.margin[c.index() * m + x.index()] -= 2;
        }
        g
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.margin[a * self.m + b]
    }

    pub fn margin(&self, a: Alternative, b: Alternative) -> i64 {
        self.get(a.index(), b.index())
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.margin.chunks(self.m.max(1)).take(self.m).map(<[i64]>::to_vec).collect()
    }

    /// Parity shared by every off-diagonal entry, `None` if mixed (or m < 2).
    pub fn parity(&self) -> Option<i64> {
        let mut parity = None;
        for i in 0..self.m {
            for j in 0..self.m {
                if i == j {
                    continue;
                }
                let p = self.get(i, j).rem_euclid(2);
                match parity {
                    None => parity = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        parity
    }

    /// Head-to-head winner; an even split goes to the lower index.
    pub fn pairwise_winner(&self, a: Alternative, b: Alternative) -> Alternative {
        match self.margin(a, b) {
            w if w > 0 => a,
            w if w < 0 => b,
            _ => a.min(b),
        }
    }
}

impl std::ops::Add for &WeightedMajorityGraph {
    type Output = WeightedMajorityGraph;

    fn add(self, rhs: &WeightedMajorityGraph) -> WeightedMajorityGraph {
        assert_eq!(self.m, rhs.m, "adding graphs over different universes");
        WeightedMajorityGraph {
            m: self.m,
            margin: self.margin.iter().zip(&rhs.margin).map(|(a, b)| a + b).collect(),
        }
    }
}

pub fn weighted_majority_graph(profile: &Profile) -> WeightedMajorityGraph {
    WeightedMajorityGraph::of_profile(profile)
}

/// The alternative beating every other one strictly, if any.
pub fn condorcet_winner(wmg: &WeightedMajorityGraph) -> Option<Alternative> {
    (0..wmg.m)
        .find(|&i| (0..wmg.m).all(|j| j == i || wmg.get(i, j) > 0))
        .map(Alternative::new)
}

pub fn scoring_totals(vector: &[i64], profile: &Profile) -> Vec<i64> {
    let refs: Vec<&LinearOrder> = profile.votes().iter().collect();
    scoring_totals_of(vector, profile.m(), &refs)
}

fn scoring_totals_of(vector: &[i64], m: usize, ballots: &[&LinearOrder]) -> Vec<i64> {
    let mut totals = vec![0i64; m];
    for v in ballots {
        for (pos, &a) in v.ranking().iter().enumerate() {
            totals[a] += vector[pos];
        }
    }
    totals
}

/// Winner of `profile` under `rule`.
pub fn evaluate(rule: &VotingRuleSpec, profile: &Profile) -> Alternative {
    let refs: Vec<&LinearOrder> = profile.votes().iter().collect();
    evaluate_ballots(rule, profile.m(), &refs)
}

/// Winner over borrowed ballots; the hot path for the enumerating solvers.
pub fn evaluate_ballots(rule: &VotingRuleSpec, m: usize, ballots: &[&LinearOrder]) -> Alternative {
    match rule {
        VotingRuleSpec::Plurality => {
            let mut totals = vec![0i64; m];
            for v in ballots {
                totals[v.top().index()] += 1;
            }
            tie_break_argmax(&totals)
        }
        VotingRuleSpec::Veto => {
            let mut vetoes = vec![0i64; m];
            for v in ballots {
                vetoes[v.bottom().index()] -= 1;
            }
            tie_break_argmax(&vetoes)
        }
        VotingRuleSpec::Scoring(_) | VotingRuleSpec::Borda => {
            let vector = rule.scoring_vector(m).expect("scoring rule");
            tie_break_argmax(&scoring_totals_of(&vector, m, ballots))
        }
        VotingRuleSpec::Stv => stv(m, ballots),
        _ => evaluate_wmg(rule, &WeightedMajorityGraph::of_ballots(m, ballots))
            .expect("WMG-based rule"),
    }
}

/// Winner computed from margins alone; `None` for rules that need ballots.
pub fn evaluate_wmg(rule: &VotingRuleSpec, wmg: &WeightedMajorityGraph) -> Option<Alternative> {
    let m = wmg.m();
    let winner = match rule {
        VotingRuleSpec::Copeland => {
            let scores: Vec<i64> = (0..m)
                .map(|i| (0..m).filter(|&j| j != i && wmg.get(i, j) > 0).count() as i64)
                .collect();
            tie_break_argmax(&scores)
        }
        VotingRuleSpec::Maximin => {
            let scores: Vec<i64> = (0..m)
                .map(|i| (0..m).filter(|&j| j != i).map(|j| wmg.get(i, j)).min().unwrap_or(0))
                .collect();
            tie_break_argmax(&scores)
        }
        VotingRuleSpec::RankedPairs => ranked_pairs(wmg),
        VotingRuleSpec::VotingTree(None) => VotingTree::balanced(m).winner(wmg),
        VotingRuleSpec::VotingTree(Some(tree)) => tree.winner(wmg),
        _ => return None,
    };
    Some(winner)
}

/// Pairs with nonnegative margin, ordered by margin descending, then source,
/// then target. Both orientations of a zero-margin pair appear.
pub fn ranked_pairs_order(wmg: &WeightedMajorityGraph) -> Vec<(usize, usize)> {
    let m = wmg.m();
    let mut pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && wmg.get(a, b) >= 0)
        .collect();
    pairs.sort_by_key(|&(a, b)| (std::cmp::Reverse(wmg.get(a, b)), a, b));
    pairs
}

fn ranked_pairs(wmg: &WeightedMajorityGraph) -> Alternative {
    let m = wmg.m();
    // reach[x][y]: x ≻ y is implied by the locked pairs
    let mut reach = vec![vec![false; m]; m];
    for (a, b) in ranked_pairs_order(wmg) {
        if reach[b][a] || reach[a][b] {
            continue;
        }
        let mut sources: Vec<usize> = (0..m).filter(|&x| reach[x][a]).collect();
        sources.push(a);
        let mut sinks: Vec<usize> = (0..m).filter(|&y| reach[b][y]).collect();
        sinks.push(b);
        for &x in &sources {
            for &y in &sinks {
                reach[x][y] = true;
            }
        }
    }
    let top = (0..m).find(|&x| (0..m).all(|y| !reach[y][x])).expect("locked ranking has a top");
    Alternative::new(top)
}

fn stv(m: usize, ballots: &[&LinearOrder]) -> Alternative {
    let mut alive = vec![true; m];
    for _ in 1..m {
        let mut counts = vec![0usize; m];
        for v in ballots {
            let top = v.ranking().iter().copied().find(|&a| alive[a]).expect("alive alternative");
            counts[top] += 1;
        }
        // lowest count out; ties eliminate the highest index
        let loser = (0..m)
            .filter(|&a| alive[a])
            .min_by_key(|&a| (counts[a], std::cmp::Reverse(a)))
            .expect("alive alternative");
        alive[loser] = false;
    }
    Alternative::new(alive.iter().position(|&x| x).expect("one survivor"))
}
