//! Instance files and the `domvote` command line.
//!
//! File grammar, one directive per line, `#` to end of line is a comment:
//!
//! ```text
//! m 3
//! n 2
//! order 3 1 2
//! partial 2
//! pair 1 2
//! pair 1 3
//! rule plurality
//! vm 3 2 1
//! ```
//!
//! `m` and `n` come first, then exactly `n` ballots, each either `order`
//! (most preferred first) or `partial k` followed by `k` lines `pair a b`
//! meaning `a ≻ b`. Optional trailing `rule`, `vm`, `v` and `u` lines.
//! Alternatives are 1-based on disk and on the command line.

use std::ffi::OsString;
use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::domination::{check_no_info_immunity, dominates, find_dominating_manipulation_with_jobs};
use crate::error::{Error, Result};
use crate::extensions::{necessary_winner, possible_winners, InformationSet};
use crate::flowsolver::{self, FlowRule};
use crate::order::{Alternative, LinearOrder, PartialOrder, PartialProfile, Profile};
use crate::reductions::{
    gen_borda_domination, pw1_to_domination, verify_pw_conditions, PossibleWinnerInstance, PwLevel, X3CInstance,
};
use crate::rules::{evaluate, VotingRuleSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ballot {
    Order(LinearOrder),
    Partial(PartialOrder),
}

impl Ballot {
    pub fn to_partial(&self) -> PartialOrder {
        match self {
            Ballot::Order(o) => PartialOrder::from_linear(o),
            Ballot::Partial(p) => p.clone(),
        }
    }

    pub fn to_linear(&self) -> Option<LinearOrder> {
        match self {
            Ballot::Order(o) => Some(o.clone()),
            Ballot::Partial(p) => p.to_linear(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub m: usize,
    pub ballots: Vec<Ballot>,
    pub rule: Option<VotingRuleSpec>,
    pub vm: Option<LinearOrder>,
    pub v: Option<LinearOrder>,
    pub u: Option<LinearOrder>,
}

impl InstanceFile {
    pub fn new(m: usize, ballots: Vec<Ballot>) -> Self {
        InstanceFile { m, ballots, rule: None, vm: None, v: None, u: None }
    }

    pub fn from_partial_profile(pp: &PartialProfile) -> Self {
        Self::new(pp.m(), pp.entries().iter().cloned().map(Ballot::Partial).collect())
    }

    pub fn from_profile(p: &Profile) -> Self {
        Self::new(p.m(), p.votes().iter().cloned().map(Ballot::Order).collect())
    }

    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    pub fn partial_profile(&self) -> Result<PartialProfile> {
        PartialProfile::new(self.m, self.ballots.iter().map(Ballot::to_partial).collect())
    }

    /// The ballots as a profile of linear orders; fails if any is partial.
    pub fn profile(&self) -> Result<Profile> {
        let votes = self
            .ballots
            .iter()
            .enumerate()
            .map(|(i, b)| {
                b.to_linear()
                    .ok_or_else(|| Error::Invalid(format!("ballot {} is not a complete order", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::new(self.m, votes)
    }
}

fn one_based(order: &LinearOrder) -> String {
    order.ranking().iter().map(|a| (a + 1).to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m {}", self.m)?;
        writeln!(f, "n {}", self.n())?;
        for ballot in &self.ballots {
            match ballot {
                Ballot::Order(o) => writeln!(f, "order {}", one_based(o))?,
                Ballot::Partial(p) => {
                    let pairs = p.cover_pairs();
                    writeln!(f, "partial {}", pairs.len())?;
                    for (a, b) in pairs {
                        writeln!(f, "pair {} {}", a + 1, b + 1)?;
                    }
                }
            }
        }
        if let Some(rule) = &self.rule {
            writeln!(f, "rule {rule}")?;
        }
        for (name, vote) in [("vm", &self.vm), ("v", &self.v), ("u", &self.u)] {
            if let Some(vote) = vote {
                writeln!(f, "{name} {}", one_based(vote))?;
            }
        }
        Ok(())
    }
}

pub fn serialize(file: &InstanceFile) -> String {
    file.to_string()
}

struct Lines<'a> {
    inner: std::vec::IntoIter<(usize, Vec<&'a str>)>,
}

impl<'a> Lines<'a> {
    /// Non-blank lines with comments stripped, split into tokens.
    fn new(text: &'a str) -> Self {
        let lines: Vec<_> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, toks)| !toks.is_empty())
            .collect();
        Lines { inner: lines.into_iter() }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        self.inner.next()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_count(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a nonnegative integer, found '{tok}'")))
}

fn parse_alternative(line: usize, tok: &str, m: usize) -> Result<usize> {
    let a = parse_count(line, tok)?;
    if a == 0 || a > m {
        return Err(parse_err(line, format!("alternative {a} out of range 1..{m}")));
    }
    Ok(a - 1)
}

fn expect_args(line: usize, toks: &[&str], count: usize) -> Result<()> {
    if toks.len() != count + 1 {
        return Err(parse_err(line, format!("'{}' takes {count} argument(s)", toks[0])));
    }
    Ok(())
}

fn parse_order_tokens(line: usize, toks: &[&str], m: usize) -> Result<LinearOrder> {
    let ranking = toks.iter().map(|t| parse_alternative(line, t, m)).collect::<Result<Vec<_>>>()?;
    LinearOrder::with_m(ranking, m).map_err(|e| parse_err(line, e.to_string()))
}

fn header(lines: &mut Lines<'_>, key: &str, last_line: usize) -> Result<usize> {
    let (line, toks) = lines.next().ok_or_else(|| parse_err(last_line, format!("missing '{key}' header")))?;
    if toks[0] != key {
        return Err(parse_err(line, format!("expected '{key}', found '{}'", toks[0])));
    }
    expect_args(line, &toks, 1)?;
    parse_count(line, toks[1])
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut lines = Lines::new(text);
    let m = header(&mut lines, "m", 1)?;
    if m == 0 || m > 64 {
        return Err(parse_err(1, format!("m = {m} outside 1..64")));
    }
    let n = header(&mut lines, "n", 1)?;
    let mut file = InstanceFile::new(m, Vec::with_capacity(n));
    let mut last_line = 1;
    while let Some((line, toks)) = lines.next() {
        last_line = line;
        match toks[0] {
            "order" | "partial" if file.ballots.len() == n => {
                return Err(parse_err(line, format!("more than {n} ballots")));
            }
            "order" => file.ballots.push(Ballot::Order(parse_order_tokens(line, &toks[1..], m)?)),
            "partial" => {
                expect_args(line, &toks, 1)?;
                let k = parse_count(line, toks[1])?;
                let mut po = PartialOrder::empty(m)?;
                for _ in 0..k {
                    let (pl, pt) = lines
                        .next()
                        .ok_or_else(|| parse_err(line, format!("expected {k} pair lines")))?;
                    last_line = pl;
                    if pt[0] != "pair" {
                        return Err(parse_err(pl, format!("expected {k} pair lines, found '{}'", pt[0])));
                    }
                    expect_args(pl, &pt, 2)?;
                    let a = parse_alternative(pl, pt[1], m)?;
                    let b = parse_alternative(pl, pt[2], m)?;
                    po = po.with_pair(Alternative::new(a), Alternative::new(b)).map_err(|e| match e {
                        Error::Cycle(_) => parse_err(pl, "cycle"),
                        other => parse_err(pl, other.to_string()),
                    })?;
                }
                file.ballots.push(Ballot::Partial(po));
            }
            "pair" => return Err(parse_err(line, "pair outside a partial ballot")),
            "rule" | "vm" | "v" | "u" if file.ballots.len() < n => {
                return Err(parse_err(line, format!("expected {n} ballots before '{}'", toks[0])));
            }
            "rule" => {
                expect_args(line, &toks, 1)?;
                if file.rule.is_some() {
                    return Err(parse_err(line, "duplicate rule"));
                }
                let rule: VotingRuleSpec = toks[1].parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
                rule.validate(m).map_err(|e| parse_err(line, e.to_string()))?;
                file.rule = Some(rule);
            }
            "vm" | "v" | "u" => {
                let slot = match toks[0] {
                    "vm" => &mut file.vm,
                    "v" => &mut file.v,
                    _ => &mut file.u,
                };
                if slot.is_some() {
                    return Err(parse_err(line, format!("duplicate '{}'", toks[0])));
                }
                *slot = Some(parse_order_tokens(line, &toks[1..], m)?);
            }
            other => return Err(parse_err(line, format!("unknown directive '{other}'"))),
        }
    }
    if file.ballots.len() != n {
        return Err(parse_err(last_line, format!("expected {n} ballots, found {}", file.ballots.len())));
    }
    Ok(file)
}

/// Parses `3>1>2` (1-based) over `m` alternatives.
pub fn parse_vote(s: &str, m: usize) -> Result<LinearOrder> {
    let ranking = s
        .split('>')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(a) if (1..=m).contains(&a) => Ok(a - 1),
                Ok(a) => Err(Error::AlternativeOutOfRange { index: a, m }),
                Err(_) => Err(Error::Invalid(format!("bad vote '{s}'"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    LinearOrder::with_m(ranking, m)
}

fn parse_alternative_list(s: &str, m: usize) -> Result<Vec<Alternative>> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(a) if (1..=m).contains(&a) => Ok(Alternative::new(a - 1)),
            Ok(a) => Err(Error::AlternativeOutOfRange { index: a, m }),
            Err(_) => Err(Error::Invalid(format!("bad alternative list '{s}'"))),
        })
        .collect()
}

fn one_based_alternative(a: usize, m: usize) -> Result<Alternative> {
    if (1..=m).contains(&a) {
        Ok(Alternative::new(a - 1))
    } else {
        Err(Error::AlternativeOutOfRange { index: a, m })
    }
}

#[derive(Parser, Debug)]
#[command(name = "domvote", version, about = "Dominating manipulations under partial information")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Winner of a complete profile.
    Winner(SourceArgs),
    /// Alternatives winning in some member of the information set.
    PossibleWinners(QueryArgs),
    /// The alternative winning in every member, if any.
    NecessaryWinner(QueryArgs),
    /// Does `u` dominate `v` for a manipulator with preferences `vm`?
    Dominates(DominatesArgs),
    /// Search for a vote dominating the truthful vote.
    Manipulate(ManipulateArgs),
    /// Reduce an exact cover by 3-sets instance to Borda domination.
    GenBordaX3c(GenArgs),
    /// Reduce a possible-winner instance to domination.
    Pw1Transform(PwArgs),
    /// Check the side conditions a possible-winner instance must meet.
    VerifyPw(VerifyArgs),
    /// Exhaustively look for a dominating manipulation without information.
    ImmunityCheck(ImmunityArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InfoKind {
    Partial,
    Complete,
    #[value(name = "none")]
    NoInfo,
    Winner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolverKind {
    Auto,
    Brute,
    Flow,
}

#[derive(Args, Debug)]
struct SourceArgs {
    #[arg(long)]
    rule: Option<VotingRuleSpec>,
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InfoArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = InfoKind::Partial)]
    info: InfoKind,
    /// Announced winner for `--info winner` (1-based).
    #[arg(long)]
    winner: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[command(flatten)]
    info: InfoArgs,
    /// Extra ballot added to every profile, e.g. `3>1>2`.
    #[arg(long)]
    vote: Option<String>,
}

#[derive(Args, Debug)]
struct DominatesArgs {
    #[command(flatten)]
    info: InfoArgs,
    #[arg(long)]
    vm: Option<String>,
    /// Defaults to `vm`.
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long, value_enum, default_value_t = SolverKind::Auto)]
    solver: SolverKind,
}

#[derive(Args, Debug)]
struct ManipulateArgs {
    #[command(flatten)]
    info: InfoArgs,
    #[arg(long)]
    vm: Option<String>,
    #[arg(long, value_enum, default_value_t = SolverKind::Auto)]
    solver: SolverKind,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Universe size, a multiple of 3.
    #[arg(long)]
    q: usize,
    /// Semicolon-separated 3-sets of 1-based elements, e.g. `1,2,3;4,5,6`.
    #[arg(long)]
    sets: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PwArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// The possible-winner candidate (1-based).
    #[arg(long)]
    c: usize,
    #[arg(long)]
    d_star: usize,
    /// Comma-separated, 1-based.
    #[arg(long)]
    cprime: String,
    /// Emit a dominating manipulation instance (no `v`/`u`).
    #[arg(long)]
    manipulation: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    d_star: usize,
    #[arg(long)]
    cprime: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    level: u8,
}

#[derive(Args, Debug)]
struct ImmunityArgs {
    #[arg(long)]
    rule: VotingRuleSpec,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

/// Outcome of a subcommand: its stdout text and whether it is affirmative.
struct Answer {
    text: String,
    affirmative: bool,
}

impl Answer {
    fn yes(text: String) -> Self {
        Answer { text, affirmative: true }
    }

    fn no(text: String) -> Self {
        Answer { text, affirmative: false }
    }
}

fn order_lines(out: &mut String, profile: &Profile) {
    for v in profile.votes() {
        let _ = writeln!(out, "order {}", one_based(v));
    }
}

struct Loaded {
    file: Option<InstanceFile>,
    rule: Option<VotingRuleSpec>,
}

impl SourceArgs {
    fn load(&self) -> Result<Loaded> {
        let file = match &self.instance {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
                Some(parse_instance(&text)?)
            }
            None => None,
        };
        let rule = self.rule.clone().or_else(|| file.as_ref().and_then(|f| f.rule.clone()));
        Ok(Loaded { file, rule })
    }
}

impl Loaded {
    fn rule(&self) -> Result<VotingRuleSpec> {
        self.rule.clone().ok_or_else(|| Error::InvalidRule("no rule given (use --rule or a rule line)".into()))
    }

    fn file(&self) -> Result<&InstanceFile> {
        self.file.as_ref().ok_or_else(|| Error::Invalid("this command needs --instance".into()))
    }

    /// A command-line vote, else the file's, else `None`.
    fn vote(&self, arg: &Option<String>, m: usize, pick: fn(&InstanceFile) -> &Option<LinearOrder>) -> Result<Option<LinearOrder>> {
        match arg {
            Some(s) => parse_vote(s, m).map(Some),
            None => Ok(self.file.as_ref().and_then(|f| pick(f).clone())),
        }
    }
}

impl InfoArgs {
    fn resolve(&self) -> Result<(Loaded, InformationSet)> {
        let loaded = self.source.load()?;
        let dims = || -> Result<(usize, usize)> {
            let m = self.m.or(loaded.file.as_ref().map(|f| f.m));
            let n = self.n.or(loaded.file.as_ref().map(InstanceFile::n));
            match (m, n) {
                (Some(m), Some(n)) => Ok((m, n)),
                _ => Err(Error::Invalid("this information set needs --m and --n".into())),
            }
        };
        let info = match self.info {
            InfoKind::Partial => InformationSet::Partial(loaded.file()?.partial_profile()?),
            InfoKind::Complete => InformationSet::Complete(loaded.file()?.profile()?),
            InfoKind::NoInfo => {
                let (m, n) = dims()?;
                InformationSet::NoInformation { m, n }
            }
            InfoKind::Winner => {
                let (m, n) = dims()?;
                let w = self.winner.ok_or_else(|| Error::Invalid("--info winner needs --winner".into()))?;
                InformationSet::WinnerOnly { rule: loaded.rule()?, winner: one_based_alternative(w, m)?, m, n }
            }
        };
        if info.m() == 0 || info.m() > 64 {
            return Err(Error::Invalid(format!("m = {} outside 1..64", info.m())));
        }
        Ok((loaded, info))
    }
}

fn flow_input(rule: &VotingRuleSpec, info: &InformationSet, solver: SolverKind) -> Result<Option<(FlowRule, PartialProfile)>> {
    let flow_rule = FlowRule::from_spec(rule);
    let pp = match info {
        InformationSet::Partial(pp) => Some(pp.clone()),
        InformationSet::Complete(p) => Some(PartialProfile::from_profile(p)),
        _ => None,
    };
    match solver {
        SolverKind::Brute => Ok(None),
        SolverKind::Auto => Ok(match (flow_rule, info) {
            (Some(r), InformationSet::Partial(pp)) => Some((r, pp.clone())),
            _ => None,
        }),
        SolverKind::Flow => match (flow_rule, pp) {
            (Some(r), Some(pp)) => Ok(Some((r, pp))),
            (None, _) => Err(Error::Invalid(format!("the flow solver does not handle {rule}"))),
            (_, None) => Err(Error::Invalid("the flow solver needs a partial or complete profile".into())),
        },
    }
}

fn cmd_winner(args: &SourceArgs) -> Result<Answer> {
    let loaded = args.load()?;
    let rule = loaded.rule()?;
    let profile = loaded.file()?.profile()?;
    rule.validate(profile.m())?;
    Ok(Answer::yes(format!("{}\n", evaluate(&rule, &profile))))
}

fn cmd_possible(args: &QueryArgs, necessary: bool) -> Result<Answer> {
    let (loaded, info) = args.info.resolve()?;
    let rule = loaded.rule()?;
    let vote = args.vote.as_deref().map(|s| parse_vote(s, info.m())).transpose()?;
    if necessary {
        return Ok(match necessary_winner(&rule, &info, vote.as_ref())? {
            Some(w) => Answer::yes(format!("{w}\n")),
            None => Answer::no("NONE\n".into()),
        });
    }
    let winners = possible_winners(&rule, &info, vote.as_ref())?;
    let line: Vec<String> = winners.iter().map(Alternative::to_string).collect();
    let text = if line.is_empty() { "NONE\n".to_string() } else { format!("{}\n", line.join(" ")) };
    Ok(Answer { text, affirmative: !winners.is_empty() })
}

fn cmd_dominates(args: &DominatesArgs) -> Result<Answer> {
    let (loaded, info) = args.info.resolve()?;
    let rule = loaded.rule()?;
    rule.validate(info.m())?;
    let m = info.m();
    let vm = loaded.vote(&args.vm, m, |f| &f.vm)?.ok_or_else(|| Error::Invalid("missing --vm".into()))?;
    let v = loaded.vote(&args.v, m, |f| &f.v)?.unwrap_or_else(|| vm.clone());
    let u = loaded.vote(&args.u, m, |f| &f.u)?.ok_or_else(|| Error::Invalid("missing --u".into()))?;
    let (yes, witness) = match flow_input(&rule, &info, args.solver)? {
        Some((flow_rule, pp)) => {
            if pp.m() != vm.m() {
                return Err(Error::MixedUniverse(pp.m(), vm.m()));
            }
            let witness = flowsolver::possible_improvement_witness(&pp, &vm, &v, &u, flow_rule);
            let yes = witness.is_some() && !flowsolver::possible_improvement(&pp, &vm, &u, &v, flow_rule);
            (yes, witness)
        }
        None => {
            let verdict = dominates(&rule, &info, &vm, &u, &v)?;
            (verdict.dominates, verdict.improvement_witness)
        }
    };
    if !yes {
        return Ok(Answer::no("NO\n".into()));
    }
    let mut text = "YES\n".to_string();
    if let Some(w) = witness {
        order_lines(&mut text, &w);
    }
    Ok(Answer::yes(text))
}

fn cmd_manipulate(args: &ManipulateArgs) -> Result<Answer> {
    let (loaded, info) = args.info.resolve()?;
    let rule = loaded.rule()?;
    rule.validate(info.m())?;
    let vm = loaded.vote(&args.vm, info.m(), |f| &f.vm)?.ok_or_else(|| Error::Invalid("missing --vm".into()))?;
    let found = match flow_input(&rule, &info, args.solver)? {
        Some((flow_rule, pp)) => {
            if pp.m() != vm.m() {
                return Err(Error::MixedUniverse(pp.m(), vm.m()));
            }
            flowsolver::flow_dominating_manipulation(&pp, &vm, flow_rule)
        }
        None => find_dominating_manipulation_with_jobs(&rule, &info, &vm, args.jobs.max(1))?,
    };
    Ok(match found {
        Some(u) => Answer::yes(format!("YES\norder {}\n", one_based(&u))),
        None => Answer::no("NONE\n".into()),
    })
}

fn emit(text: String, output: &Option<PathBuf>) -> Result<String> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_gen(args: &GenArgs) -> Result<Answer> {
    let sets = args
        .sets
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let elems: Vec<usize> = s
                .split(',')
                .map(|t| t.trim().parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Invalid(format!("bad set '{s}'")))?;
            <[usize; 3]>::try_from(elems).map_err(|_| Error::Invalid(format!("set '{s}' does not have 3 elements")))
        })
        .collect::<Result<Vec<_>>>()?;
    let x = X3CInstance::new(args.q, sets)?;
    let built = gen_borda_domination(&x)?;
    let cert = &built.certificate;
    let inst = built.instance;
    let mut file = InstanceFile::from_partial_profile(&inst.pp);
    file.rule = Some(inst.rule);
    file.vm = Some(inst.vm);
    file.v = Some(inst.v);
    file.u = Some(inst.u);
    let mut text = String::new();
    let _ = writeln!(text, "# borda domination from exact cover, q = {}, t = {}", x.q(), x.sets().len());
    let _ = writeln!(text, "# exact cover exists: {}", if x.is_solvable() { "yes" } else { "no" });
    let _ = writeln!(
        text,
        "# padding shift {}, s(w) - s(c) = {}, s(c) - s(v_i) = {}",
        cert.shift,
        cert.w_minus_c,
        cert.c_minus_v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    );
    text.push_str(&file.to_string());
    Ok(Answer::yes(emit(text, &args.output)?))
}

fn pw_instance(source: &SourceArgs, c: usize, d_star: usize, cprime: &str) -> Result<(PossibleWinnerInstance, Alternative, Vec<Alternative>)> {
    let loaded = source.load()?;
    let rule = loaded.rule()?;
    let pp = loaded.file()?.partial_profile()?;
    let m = pp.m();
    let pw = PossibleWinnerInstance { rule, pp, c: one_based_alternative(c, m)? };
    Ok((pw, one_based_alternative(d_star, m)?, parse_alternative_list(cprime, m)?))
}

fn cmd_pw1(args: &PwArgs) -> Result<Answer> {
    let (pw, d_star, cprime) = pw_instance(&args.source, args.c, args.d_star, &args.cprime)?;
    let inst = pw1_to_domination(&pw, d_star, &cprime)?;
    let mut file = InstanceFile::from_partial_profile(&inst.pp);
    file.rule = Some(inst.rule);
    file.vm = Some(inst.vm);
    if !args.manipulation {
        file.v = Some(inst.v);
        file.u = Some(inst.u);
    }
    Ok(Answer::yes(emit(file.to_string(), &args.output)?))
}

fn cmd_verify(args: &VerifyArgs) -> Result<Answer> {
    let (pw, d_star, cprime) = pw_instance(&args.source, args.c, args.d_star, &args.cprime)?;
    let level = if args.level == 1 { PwLevel::One } else { PwLevel::Two };
    Ok(if verify_pw_conditions(&pw, d_star, &cprime, level)? {
        Answer::yes("YES\n".into())
    } else {
        Answer::no("NO\n".into())
    })
}

fn cmd_immunity(args: &ImmunityArgs) -> Result<Answer> {
    Ok(match check_no_info_immunity(&args.rule, args.m, args.n)? {
        None => Answer::yes("YES\n".into()),
        Some((vm, u)) => Answer::no(format!("NO\nvm {}\nu {}\n", one_based(&vm), one_based(&u))),
    })
}

fn dispatch(command: &Command) -> Result<Answer> {
    match command {
        Command::Winner(a) => cmd_winner(a),
        Command::PossibleWinners(a) => cmd_possible(a, false),
        Command::NecessaryWinner(a) => cmd_possible(a, true),
        Command::Dominates(a) => cmd_dominates(a),
        Command::Manipulate(a) => cmd_manipulate(a),
        Command::GenBordaX3c(a) => cmd_gen(a),
        Command::Pw1Transform(a) => cmd_pw1(a),
        Command::VerifyPw(a) => cmd_verify(a),
        Command::ImmunityCheck(a) => cmd_immunity(a),
    }
}

/// Runs the command line, writing to the given streams; returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "{first}");
            return 2;
        }
    };
    match dispatch(&cli.command) {
        Ok(answer) => {
            let _ = stdout.write_all(answer.text.as_bytes());
            if answer.affirmative {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
