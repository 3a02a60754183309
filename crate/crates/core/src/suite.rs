//! Verification suites over a corpus of groups, producing deterministic
//! reports.
//!
//! Random instances are drawn from a fixed internal seed, so every run checks
//! the same modules; the caller's seed only steers the construction of
//! equivariant embeddings. Reports record only quantities that do not depend
//! on the embedding.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{
    kgroup_comparison_module, verify_sunit_closed_form, verify_sunit_index, Parity, PlaceModel,
};
use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::corpus::{
    builtin_ring, random_lattice_pair, random_presented_instance, random_relation, subgroups_of_order,
    BUILTIN_GROUPS,
};
use crate::error::{Error, Result};
use crate::grp::Subgroup;
use crate::json::RationalJson;
use crate::regfe::{
    factor_equivalent, factor_equivalent_presented, regulator_constants_table, verify_lemma,
};

const INSTANCE_SEED: u64 = 0x5eed_b0a7_2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma,
    Corollary,
    Sunit,
    Kgroups,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Lemma, Suite::Corollary, Suite::Sunit, Suite::Kgroups];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma => "lemma",
            Suite::Corollary => "corollary",
            Suite::Sunit => "sunit",
            Suite::Kgroups => "kgroups",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name or `all`.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::from_str(name).map(|s| vec![s])
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub group: String,
    pub case: String,
    pub relation: Option<usize>,
    pub lhs: RationalJson,
    pub rhs: RationalJson,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    fn new(group: &str, case: String, relation: Option<usize>, lhs: &BigRational, rhs: &BigRational, pass: bool) -> Self {
        Check {
            group: group.to_string(),
            case,
            relation,
            lhs: lhs.into(),
            rhs: rhs.into(),
            pass,
            error: None,
        }
    }

    fn failed(group: &str, case: String, relation: Option<usize>, err: &Error) -> Self {
        let zero = RationalJson {
            num: "0".into(),
            den: "1".into(),
        };
        Check {
            group: group.to_string(),
            case,
            relation,
            lhs: zero.clone(),
            rhs: zero,
            pass: false,
            error: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub groups: Vec<String>,
    pub suites: Vec<SuiteReport>,
    pub verdict: bool,
}

impl VerifyReport {
    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == suite.name())
    }
}

/// A named group with its Burnside ring.
#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    pub ring: BurnsideRing,
}

pub fn default_corpus(bound: usize) -> Result<Vec<CorpusGroup>> {
    named_corpus(&BUILTIN_GROUPS, bound)
}

pub fn named_corpus(names: &[&str], bound: usize) -> Result<Vec<CorpusGroup>> {
    names
        .iter()
        .map(|&name| {
            Ok(CorpusGroup {
                name: name.to_string(),
                ring: builtin_ring(name, bound)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub retry_budget: usize,
    /// Decomposition groups, each given by generating elements; `None`
    /// enumerates all one- and two-element choices of subgroup classes.
    pub d_lists: Option<Vec<Vec<Vec<usize>>>>,
    pub lemma_instances: usize,
    pub corollary_instances: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            retry_budget: crate::zgmod::DEFAULT_RETRY_BUDGET,
            d_lists: None,
            lemma_instances: 30,
            corollary_instances: 10,
        }
    }
}

fn instance_rng(group_index: usize, suite: Suite) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(INSTANCE_SEED ^ ((group_index as u64) << 8) ^ suite as u64)
}

fn embedding_seed(seed: u64, group_index: usize, i: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(((group_index as u64) << 32) | i as u64)
}

fn nonzero_relation(ring: &BurnsideRing, rng: &mut impl Rng) -> Option<BurnsideElement> {
    let basis = ring.brauer_relation_basis();
    let first = basis.relations().first()?.clone();
    let theta = random_relation(ring, rng);
    Some(if theta.is_zero() { first } else { theta })
}

pub fn run_lemma(corpus: &[CorpusGroup], opts: &VerifyOptions) -> SuiteReport {
    let mut checks = Vec::new();
    for (gi, cg) in corpus.iter().enumerate() {
        let mut rng = instance_rng(gi, Suite::Lemma);
        for i in 0..opts.lemma_instances {
            let Some(theta) = nonzero_relation(&cg.ring, &mut rng) else {
                break;
            };
            let seed = embedding_seed(opts.seed, gi, i);
            let case = format!("instance {i}");
            let outcome = random_presented_instance(&cg.ring, &mut rng, seed).and_then(|inst| {
                verify_lemma(&cg.ring, &theta, &inst.m, &inst.n, &inst.t).map(|c| (inst.description, c))
            });
            checks.push(match outcome {
                Ok((desc, c)) => Check::new(&cg.name, format!("{case}: {desc}"), None, &c.lhs, &c.rhs, c.holds),
                Err(e) => Check::failed(&cg.name, case, None, &e),
            });
        }
    }
    finish(Suite::Lemma, checks)
}

pub fn run_corollary(corpus: &[CorpusGroup], opts: &VerifyOptions) -> SuiteReport {
    let mut checks = Vec::new();
    for (gi, cg) in corpus.iter().enumerate() {
        let ring = &cg.ring;
        let basis = ring.brauer_relation_basis();
        let mut rng = instance_rng(gi, Suite::Corollary);
        for i in 0..opts.corollary_instances {
            let seed = embedding_seed(opts.seed, gi, i);
            let presented = i % 3 == 2;
            let outcome = if presented {
                random_presented_instance(ring, &mut rng, seed).and_then(|inst| {
                    factor_equivalent_presented(ring, &basis, &inst.m, &inst.n, inst.t)
                        .map(|r| (inst.description, r))
                })
            } else {
                let pair = random_lattice_pair(ring, &mut rng);
                factor_equivalent(ring, &basis, &pair.m, &pair.n, seed, opts.retry_budget)
                    .map(|r| (pair.description, r))
            };
            match outcome {
                Ok((desc, report)) => {
                    let case = format!("pair {i}: {desc}, factor equivalent: {}", report.verdict);
                    if report.relations.is_empty() {
                        let one = BigRational::one();
                        checks.push(Check::new(&cg.name, case.clone(), None, &one, &one, true));
                    }
                    for (k, (a, b)) in report
                        .regulator_constants_m
                        .iter()
                        .zip(&report.regulator_constants_n)
                        .enumerate()
                    {
                        checks.push(Check::new(&cg.name, case.clone(), Some(k), a, b, report.corollary[k] == report.defects[k].is_one()));
                    }
                }
                Err(e) => checks.push(Check::failed(&cg.name, format!("pair {i}"), None, &e)),
            }
        }
    }
    finish(Suite::Corollary, checks)
}

/// All one- and two-element multisets of subgroup class representatives.
fn default_d_lists(ring: &BurnsideRing) -> Vec<Vec<Subgroup>> {
    let k = ring.class_count();
    let rep = |c: usize| ring.representative(c).clone();
    let mut out: Vec<Vec<Subgroup>> = (0..k).map(|c| vec![rep(c)]).collect();
    for a in 0..k {
        for b in a..k {
            out.push(vec![rep(a), rep(b)]);
        }
    }
    out
}

fn describe_d_list(ring: &BurnsideRing, ds: &[Subgroup]) -> String {
    let ids: Vec<String> = ds
        .iter()
        .map(|d| match ring.table().class_of(d) {
            Some(c) => c.to_string(),
            None => "?".into(),
        })
        .collect();
    format!("D=[{}]", ids.join(","))
}

pub fn run_sunit(corpus: &[CorpusGroup], opts: &VerifyOptions) -> SuiteReport {
    let mut checks = Vec::new();
    for cg in corpus {
        let ring = &cg.ring;
        let group = ring.group();
        let basis = ring.brauer_relation_basis();
        let d_lists: Vec<Vec<Subgroup>> = match &opts.d_lists {
            Some(lists) => lists
                .iter()
                .map(|l| l.iter().map(|gens| group.generate(gens)).collect())
                .collect(),
            None => default_d_lists(ring),
        };
        for ds in d_lists {
            let label = describe_d_list(ring, &ds);
            let model = match PlaceModel::new(group.clone(), ds) {
                Ok(m) => m,
                Err(e) => {
                    checks.push(Check::failed(&cg.name, label, None, &e));
                    continue;
                }
            };
            for (c, class) in ring.table().classes().iter().enumerate() {
                let case = format!("{label} index at H={c}");
                checks.push(match verify_sunit_index(&model, &class.representative) {
                    Ok(r) => Check::new(&cg.name, case, None, &r.index, &r.expected, r.holds),
                    Err(e) => Check::failed(&cg.name, case, None, &e),
                });
            }
            for (k, theta) in basis.relations().iter().enumerate() {
                let case = format!("{label} closed form");
                checks.push(match verify_sunit_closed_form(ring, &model, theta) {
                    Ok(r) => Check::new(&cg.name, case, Some(k), &r.lhs, &r.rhs, r.holds),
                    Err(e) => Check::failed(&cg.name, case, Some(k), &e),
                });
            }
        }
    }
    finish(Suite::Sunit, checks)
}

/// Multisets of size at most 2 drawn from `pool`.
fn small_multisets(pool: &[Subgroup]) -> Vec<Vec<Subgroup>> {
    let mut out = vec![Vec::new()];
    for a in 0..pool.len() {
        out.push(vec![pool[a].clone()]);
        for b in a..pool.len() {
            out.push(vec![pool[a].clone(), pool[b].clone()]);
        }
    }
    out
}

pub fn run_kgroups(corpus: &[CorpusGroup], _opts: &VerifyOptions) -> SuiteReport {
    let mut checks = Vec::new();
    for cg in corpus {
        let ring = &cg.ring;
        let group: &Arc<_> = ring.group();
        let basis = ring.brauer_relation_basis();
        let order_two = subgroups_of_order(ring, 2);
        let mut real = subgroups_of_order(ring, 1);
        real.extend(order_two.iter().cloned());
        for (parity, pool) in [(Parity::Odd, &real), (Parity::Even, &order_two)] {
            for ds in small_multisets(pool) {
                for s2 in 0..2 {
                    let case = format!("{parity:?} {} s2={s2}", describe_d_list(ring, &ds));
                    let table = kgroup_comparison_module(group, &ds, s2, parity)
                        .and_then(|m| regulator_constants_table(ring, &basis, &m));
                    match table {
                        Ok(values) => {
                            let one = BigRational::one();
                            if values.is_empty() {
                                checks.push(Check::new(&cg.name, case.clone(), None, &one, &one, true));
                            }
                            for (k, v) in values.iter().enumerate() {
                                checks.push(Check::new(&cg.name, case.clone(), Some(k), v, &one, v.is_one()));
                            }
                        }
                        Err(e) => checks.push(Check::failed(&cg.name, case, None, &e)),
                    }
                }
            }
        }
    }
    finish(Suite::Kgroups, checks)
}

fn finish(suite: Suite, checks: Vec<Check>) -> SuiteReport {
    let passed = checks.iter().filter(|c| c.pass).count();
    SuiteReport {
        name: suite.name().to_string(),
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

pub fn run_suite(suite: Suite, corpus: &[CorpusGroup], opts: &VerifyOptions) -> SuiteReport {
    match suite {
        Suite::Lemma => run_lemma(corpus, opts),
        Suite::Corollary => run_corollary(corpus, opts),
        Suite::Sunit => run_sunit(corpus, opts),
        Suite::Kgroups => run_kgroups(corpus, opts),
    }
}

pub fn verify(suites: &[Suite], corpus: &[CorpusGroup], opts: &VerifyOptions) -> VerifyReport {
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, corpus, opts)).collect();
    VerifyReport {
        seed: opts.seed,
        groups: corpus.iter().map(|c| c.name.clone()).collect(),
        verdict: reports.iter().all(|r| r.failed == 0),
        suites: reports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(parse_suites("all").unwrap().len(), 4);
        assert_eq!(parse_suites("sunit").unwrap(), vec![Suite::Sunit]);
        assert!(parse_suites("bogus").is_err());
    }

    #[test]
    fn sunit_on_v4_regular_places() {
        let corpus = named_corpus(&["V4"], 64).unwrap();
        let opts = VerifyOptions {
            d_lists: Some(vec![vec![vec![0]]]),
            ..VerifyOptions::default()
        };
        let report = run_sunit(&corpus, &opts);
        assert_eq!(report.failed, 0);
        assert_eq!(report.checks.len(), 5 + 1);
    }

    #[test]
    fn small_runs_pass_and_are_reproducible() {
        let corpus = named_corpus(&["S3", "V4"], 64).unwrap();
        let opts = VerifyOptions {
            lemma_instances: 4,
            corollary_instances: 4,
            ..VerifyOptions::default()
        };
        let a = verify(&[Suite::Lemma, Suite::Corollary, Suite::Kgroups], &corpus, &opts);
        assert!(a.verdict, "{a:#?}");
        let b = verify(&[Suite::Lemma, Suite::Corollary, Suite::Kgroups], &corpus, &opts);
        assert_eq!(a, b);
        let c = verify(
            &[Suite::Lemma, Suite::Corollary, Suite::Kgroups],
            &corpus,
            &VerifyOptions { seed: 77, ..opts },
        );
        assert_eq!(a.suites, c.suites);
    }
}
