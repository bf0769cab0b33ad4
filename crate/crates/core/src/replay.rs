//! Step-by-step replay of the nonexistence argument for (1911,270,105,27).
//!
//! Arithmetic steps are recomputed from the parameters through the other
//! modules and compared against the expected values; structural steps carry
//! the combinatorial reasoning as text and are counted but never "verified".
//! The transcript renders as text or as a line-delimited JSON record stream.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cliquegeom::{
    self, cross_edge_capacity, join_clique_preserves_lmin, join_criterion_polynomial,
    mg_polynomial, sym_diff_alpha_min, sym_diff_check, sym_diff_quotient, t_range, three_part_det,
    CliqueIntersectionCase, TRange,
};
use crate::exactnum::{self, format_rational, int, parse_rational, rat, Rational, SturmSequence};
use crate::srgcore::{
    coclique_bound_holds, coclique_max, delsarte_bound, flagship, spectrum_of,
    terwilliger_forces_quadrangle, w_size_candidates, FeasibilityReport, SrgParams,
};

/// Id of the step whose passing comparison is the final contradiction.
pub const CONCLUDING_STEP: &str = "S7.final";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("transcript not defined for these parameters: {0}")]
    UnsupportedParams(SrgParams),
    #[error("fault target {step}:{label} does not exist in the transcript")]
    UnknownFaultTarget { step: String, label: String },
    #[error("bad fault spec {0:?}; expected STEP:LABEL=VALUE")]
    BadFaultSpec(String),
    #[error("record stream line {line}: {msg}")]
    BadRecord { line: usize, msg: String },
    #[error("internal rule failure in step {step}: {msg}")]
    Rule { step: String, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepKind {
    Arithmetic,
    Structural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepStatus {
    Passed,
    Failed,
    /// Structural steps: recorded, not checked.
    Unchecked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

mod exact_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("not an exact rational: {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub label: String,
    #[serde(with = "exact_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: String,
    pub relation: Relation,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub id: String,
    pub kind: StepKind,
    pub statement: String,
    pub values: Vec<NamedValue>,
    pub comparisons: Vec<Comparison>,
    pub status: StepStatus,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ProofStep {
    pub fn value(&self, label: &str) -> Option<&Rational> {
        self.values
            .iter()
            .find(|v| v.label == label)
            .map(|v| &v.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Contradiction,
    Incomplete,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Contradiction => "CONTRADICTION",
            Verdict::Incomplete => "INCOMPLETE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTranscript {
    pub params: SrgParams,
    pub steps: Vec<ProofStep>,
    pub verdict: Verdict,
}

/// One line of the record stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Header {
        params: String,
        steps: usize,
    },
    Step(ProofStep),
    Summary {
        arithmetic_passed: usize,
        arithmetic_failed: usize,
        structural: usize,
        verdict: Verdict,
    },
}

impl ProofTranscript {
    pub fn arithmetic_steps(&self) -> impl Iterator<Item = &ProofStep> {
        self.steps.iter().filter(|s| s.kind == StepKind::Arithmetic)
    }

    pub fn step(&self, id: &str) -> Option<&ProofStep> {
        self.steps.iter().find(|s| s.id == id)
    }

    fn counts(&self) -> (usize, usize, usize) {
        let passed = self
            .arithmetic_steps()
            .filter(|s| s.status == StepStatus::Passed)
            .count();
        let failed = self.arithmetic_steps().count() - passed;
        (passed, failed, self.steps.len() - passed - failed)
    }

    pub fn records(&self) -> Vec<Record> {
        let (arithmetic_passed, arithmetic_failed, structural) = self.counts();
        let mut out = vec![Record::Header {
            params: self.params.to_string(),
            steps: self.steps.len(),
        }];
        out.extend(self.steps.iter().cloned().map(Record::Step));
        out.push(Record::Summary {
            arithmetic_passed,
            arithmetic_failed,
            structural,
            verdict: self.verdict,
        });
        out
    }

    pub fn render_records(&self) -> String {
        render_record_stream(&self.records())
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("transcript for {}\n", self.params);
        for s in &self.steps {
            let kind = match s.kind {
                StepKind::Arithmetic => "ARITHMETIC",
                StepKind::Structural => "STRUCTURAL",
            };
            let status = match s.status {
                StepStatus::Passed => "PASSED",
                StepStatus::Failed => "FAILED",
                StepStatus::Unchecked => "UNCHECKED",
            };
            out.push_str(&format!(
                "\n[{}] {kind} {status}\n  {}\n",
                s.id, s.statement
            ));
            for v in &s.values {
                out.push_str(&format!("  {} = {}\n", v.label, format_rational(&v.value)));
            }
            for c in &s.comparisons {
                let verdict = if c.holds { "holds" } else { "FAILS" };
                out.push_str(&format!(
                    "  check {} {} {}: {verdict}\n",
                    c.lhs,
                    c.relation.symbol(),
                    c.rhs
                ));
            }
            if let Some(n) = &s.note {
                out.push_str(&format!("  note: {n}\n"));
            }
            out.push_str(&format!("  cite: {}\n", s.citation));
        }
        let (passed, failed, structural) = self.counts();
        out.push_str(&format!(
            "\narithmetic steps: {passed} passed, {failed} failed; structural steps: {structural}\n"
        ));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

pub fn render_record_stream(records: &[Record]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
        .collect()
}

pub fn parse_record_stream(text: &str) -> Result<Vec<Record>, ReplayError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| ReplayError::BadRecord {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect()
}

/// Overrides one recorded value of one step before its comparisons run;
/// used as a negative control.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fault {
    pub step: String,
    pub label: String,
    pub value: Rational,
}

impl FromStr for Fault {
    type Err = ReplayError;

    fn from_str(s: &str) -> Result<Self, ReplayError> {
        let bad = || ReplayError::BadFaultSpec(s.to_string());
        let (target, value) = s.split_once('=').ok_or_else(bad)?;
        let (step, label) = target.rsplit_once(':').ok_or_else(bad)?;
        let value = parse_rational(value).ok_or_else(bad)?;
        if step.is_empty() || label.is_empty() {
            return Err(bad());
        }
        Ok(Fault {
            step: step.into(),
            label: label.into(),
            value,
        })
    }
}

struct Replayer {
    faults: BTreeMap<(String, String), (Rational, bool)>,
    steps: Vec<ProofStep>,
}

struct StepBuilder<'r> {
    replayer: &'r mut Replayer,
    step: ProofStep,
}

impl Replayer {
    fn new(faults: &[Fault]) -> Self {
        let faults = faults
            .iter()
            .map(|f| ((f.step.clone(), f.label.clone()), (f.value.clone(), false)))
            .collect();
        Self {
            faults,
            steps: Vec::new(),
        }
    }

    fn arith(&mut self, id: &str, statement: &str, citation: &str) -> StepBuilder<'_> {
        StepBuilder {
            replayer: self,
            step: ProofStep {
                id: id.into(),
                kind: StepKind::Arithmetic,
                statement: statement.into(),
                values: Vec::new(),
                comparisons: Vec::new(),
                status: StepStatus::Passed,
                citation: citation.into(),
                note: None,
            },
        }
    }

    fn structural(&mut self, id: &str, statement: &str, citation: &str) {
        self.steps.push(ProofStep {
            id: id.into(),
            kind: StepKind::Structural,
            statement: statement.into(),
            values: Vec::new(),
            comparisons: Vec::new(),
            status: StepStatus::Unchecked,
            citation: citation.into(),
            note: None,
        });
    }
}

impl StepBuilder<'_> {
    /// Records a computed value (or its injected replacement) and returns it.
    fn val(&mut self, label: &str, value: impl Into<Rational>) -> Rational {
        let key = (self.step.id.clone(), label.to_string());
        let value = match self.replayer.faults.get_mut(&key) {
            Some((v, used)) => {
                *used = true;
                v.clone()
            }
            None => value.into(),
        };
        self.step.values.push(NamedValue {
            label: label.into(),
            value: value.clone(),
        });
        value
    }

    fn n(&mut self, label: &str, value: i64) -> Rational {
        self.val(label, int(value))
    }

    fn check(&mut self, lhs: &str, relation: Relation, rhs: &str) -> &mut Self {
        let l = self
            .step
            .value(lhs)
            .unwrap_or_else(|| panic!("{}: no value {lhs}", self.step.id))
            .clone();
        let r = self
            .step
            .value(rhs)
            .unwrap_or_else(|| panic!("{}: no value {rhs}", self.step.id))
            .clone();
        let holds = relation.holds(&l, &r);
        self.step.comparisons.push(Comparison {
            lhs: lhs.into(),
            relation,
            rhs: rhs.into(),
            holds,
        });
        self
    }

    fn note(&mut self, note: &str) -> &mut Self {
        self.step.note = Some(note.into());
        self
    }

    fn done(mut self) {
        let ok = !self.step.comparisons.is_empty() && self.step.comparisons.iter().all(|c| c.holds);
        self.step.status = if ok {
            StepStatus::Passed
        } else {
            StepStatus::Failed
        };
        self.replayer.steps.push(self.step);
    }
}

fn rule_err(step: &str, e: impl fmt::Display) -> ReplayError {
    ReplayError::Rule {
        step: step.into(),
        msg: e.to_string(),
    }
}

fn big(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

fn restricted(c: i64, lmin: i64, step: &str) -> Result<(i64, i64), ReplayError> {
    match t_range(c, lmin).map_err(|e| rule_err(step, e))? {
        TRange::Restricted { t_min, t_max, .. } => Ok((t_min, t_max)),
        TRange::Unrestricted { .. } => {
            Err(rule_err(step, format!("no forbidden range for c = {c}")))
        }
    }
}

pub fn replay_1911(p: &SrgParams) -> Result<ProofTranscript, ReplayError> {
    replay_1911_with(p, &[])
}

/// Replays the argument with the given faults injected.
pub fn replay_1911_with(p: &SrgParams, faults: &[Fault]) -> Result<ProofTranscript, ReplayError> {
    if *p != flagship() {
        return Err(ReplayError::UnsupportedParams(*p));
    }
    let mut r = Replayer::new(faults);
    build_steps(p, &mut r)?;
    if let Some(((step, label), _)) = r.faults.iter().find(|(_, (_, used))| !used) {
        return Err(ReplayError::UnknownFaultTarget {
            step: step.clone(),
            label: label.clone(),
        });
    }
    let all_pass = r
        .steps
        .iter()
        .all(|s| s.kind == StepKind::Structural || s.status == StepStatus::Passed);
    let last = r
        .steps
        .iter()
        .rev()
        .find(|s| s.kind == StepKind::Arithmetic);
    let concluded = last.is_some_and(|s| s.id == CONCLUDING_STEP && s.status == StepStatus::Passed);
    let verdict = if all_pass && concluded {
        Verdict::Contradiction
    } else {
        Verdict::Incomplete
    };
    Ok(ProofTranscript {
        params: *p,
        steps: r.steps,
        verdict,
    })
}

use Relation::{Eq as EQ, Ge as GE, Gt as GT, Le as LE, Lt as LT};

fn build_steps(p: &SrgParams, r: &mut Replayer) -> Result<(), ReplayError> {
    let (n, k, lambda, mu) = (p.n(), p.k(), p.lambda(), p.mu());
    let spec = spectrum_of(p).map_err(|e| rule_err("S0.spectrum", e))?;
    let m = spec.m();
    let lmin = spec.s;

    // Spectrum
    let mut s = r.arith(
        "S0.spectrum",
        "eigenvalues and multiplicities follow from the parameters; the smallest eigenvalue is -3",
        "SRG spectrum formulas: r,s roots of x^2 - (lambda-mu)x - (k-mu); multiplicities from trace 0",
    );
    s.n("r", spec.r);
    s.n("s", spec.s);
    s.n("f", spec.f);
    s.n("g", spec.g);
    s.n("expected_s", -3);
    s.val("vertex_count", int(1 + spec.f + spec.g));
    s.n("n", n);
    s.val(
        "trace",
        int(k) + int(spec.f) * int(spec.r) + int(spec.g) * int(spec.s),
    );
    s.n("zero", 0);
    s.check("s", EQ, "expected_s")
        .check("vertex_count", EQ, "n")
        .check("trace", EQ, "zero");
    s.done();

    // S1
    let mut s = r.arith(
        "S1.quadrangle",
        "the valency is below 50(mu-1), so the graph contains an induced quadrangle",
        "quadrangle rule: a non-Terwilliger graph exists when k < 50(mu-1), giving an induced 4-cycle",
    );
    s.n("k", k);
    s.n("bound", 50 * (mu - 1));
    s.n("rule_fires", i64::from(terwilliger_forces_quadrangle(p)));
    s.n("one", 1);
    s.check("k", LT, "bound").check("rule_fires", EQ, "one");
    s.done();
    r.structural(
        "S1.setup",
        "fix an induced quadrangle x ~ u ~ y ~ v ~ x; from here on work inside the local graph of x",
        "choice of quadrangle",
    );

    // S2: clique cap
    let cubic = mg_polynomial(p).map_err(|e| rule_err("S2.applicability", e))?;
    let mut s = r.arith(
        "S2.applicability",
        "mu exceeds m(m-1), so the cubic clique rule applies",
        "cubic maximal-clique rule, applicability condition mu > m(m-1)",
    );
    s.n("mu", mu);
    s.n("m(m-1)", m * (m - 1));
    s.check("mu", GT, "m(m-1)");
    s.done();

    let mut s = r.arith(
        "S2.threshold",
        "the rule applies to maximal cliques of order above mu^2/(mu-m(m-1)) - m + 1",
        "cubic maximal-clique rule, order threshold",
    );
    s.val("threshold", cubic.threshold.clone());
    s.val("expected", rat(229, 7));
    s.val("floor", int(0) + big(&exactnum::floor(&cubic.threshold)));
    s.n("expected_floor", 32);
    s.check("threshold", EQ, "expected")
        .check("floor", EQ, "expected_floor");
    s.done();

    let mut s = r.arith(
        "S2.expansion",
        "symbolic expansion of the clique inequality in c cancels to a cubic",
        "cubic maximal-clique rule, expanded polynomial M_G(c)",
    );
    for (i, want) in [(0usize, 3277200i64), (1, 1468512), (2, -80784), (3, 672)] {
        s.val(&format!("c{i}"), big(&cubic.polynomial.coeff(i)));
        s.n(&format!("expected_c{i}"), want);
    }
    s.val("c4", big(&cubic.polynomial.coeff(4)));
    s.n("zero", 0);
    for i in 0..4 {
        s.check(&format!("c{i}"), EQ, &format!("expected_c{i}"));
    }
    s.check("c4", EQ, "zero");
    s.done();

    let mut s = r.arith(
        "S2.endpoints",
        "M_G is negative at c = 26 and at c = 97",
        "cubic maximal-clique rule, sign evaluation",
    );
    s.val("M(26)", big(&cubic.eval(26)));
    s.val("M(97)", big(&cubic.eval(97)));
    s.n("zero", 0);
    s.check("M(26)", LT, "zero").check("M(97)", LT, "zero");
    s.done();

    let sturm = SturmSequence::new(&cubic.polynomial);
    let above = i64::try_from(exactnum::floor(&cubic.threshold))
        .map_err(|e| rule_err("S2.no_root_between", e))?
        + 1;
    let first_nonneg = (above..)
        .find(|&c| cubic.eval(c) >= BigInt::from(0))
        .expect("positive leading coefficient");
    let mut s = r.arith(
        "S2.no_root_between",
        "M_G has no root in (26, 97], so it is negative on that whole range; the first order above the threshold with M_G >= 0 is at least 98",
        "Sturm count of roots of M_G between the two negative evaluations",
    );
    s.val(
        "roots_in_(26,97]",
        int(sturm.count_in(&int(26), &int(97)) as i64),
    );
    s.n("zero", 0);
    s.n("first_nonnegative_order", first_nonneg);
    s.n("expected_lower", 98);
    s.check("roots_in_(26,97]", EQ, "zero")
        .check("first_nonnegative_order", GE, "expected_lower");
    s.done();

    let del = delsarte_bound(p).map_err(|e| rule_err("S2.delsarte", e))?;
    let mut s = r.arith(
        "S2.delsarte",
        "the Delsarte bound 1 + k/m is below the first order the cubic rule allows",
        "Delsarte clique bound",
    );
    s.n("delsarte", del);
    s.n("expected", 91);
    s.n("first_allowed", first_nonneg);
    s.check("delsarte", EQ, "expected")
        .check("first_allowed", GT, "delsarte");
    s.done();

    let cap = cliquegeom::max_clique_order(p).map_err(|e| rule_err("S2.cap", e))?;
    let mut s = r.arith(
        "S2.cap",
        "no maximal clique lies above the threshold, so every clique has order at most 32",
        "combined clique cap",
    );
    let cap_q = s.n("cap", cap);
    s.n("expected", 32);
    s.check("cap", EQ, "expected");
    s.done();
    let cap = i64::try_from(exactnum::floor(&cap_q)).unwrap_or(i64::MAX);

    // S3: cocliques in the local graph
    let (holds, slack) = coclique_bound_holds(p, 5).map_err(|e| rule_err("S3.coclique", e))?;
    let mut s = r.arith(
        "S3.coclique",
        "a 5-coclique in the local graph meets the coclique inequality with equality",
        "local coclique inequality C(c,2)(mu-1) >= c(lambda+1) - k",
    );
    s.n("lhs", 10 * (mu - 1));
    s.n("rhs", 5 * (lambda + 1) - k);
    s.n("expected", 260);
    s.n("slack", slack);
    s.n("zero", 0);
    s.n("holds", i64::from(holds));
    s.n("one", 1);
    s.check("lhs", EQ, "expected")
        .check("rhs", EQ, "expected")
        .check("slack", EQ, "zero")
        .check("holds", EQ, "one");
    s.done();
    r.structural(
        "S3.equality",
        "equality forces every pair of a 5-coclique of the local graph to have exactly mu-1 common neighbours inside it",
        "equality case of the local coclique inequality",
    );
    let mut s = r.arith(
        "S3.cuv",
        "u and v share y outside the local graph, so c(u,v) <= mu-2 < mu-1; u and v never lie in a common 5-coclique",
        "quadrangle partners outside the local graph",
    );
    s.n("c(u,v)_max", mu - 2);
    s.n("forced", mu - 1);
    s.check("c(u,v)_max", LT, "forced");
    s.done();
    let mut s = r.arith(
        "S3.coclique_cap_generic",
        "the generic coclique rule alone never fails for these parameters",
        "local coclique inequality, generic scan",
    );
    s.n("coclique_max", coclique_max(p));
    s.n("k", k);
    s.check("coclique_max", EQ, "k");
    s.done();

    // S4: four-set counting
    let mut s = r.arith(
        "S4.count",
        "for an independent U = {u, v, w1, w2}, at least 4(lambda+1) - k local vertices see two or more of U",
        "inclusion-exclusion over neighbourhoods of a 4-coclique",
    );
    s.n("covered", 4 * (lambda + 1) - k);
    s.n("expected", 154);
    s.check("covered", EQ, "expected");
    s.done();
    let mut s = r.arith(
        "S4.range",
        "the six pair counts sum to between 154 and (mu-2) + 5(mu-1)",
        "pair counts bounded by mu-1, and by mu-2 for {u,v}",
    );
    let lo = s.n("lower", 4 * (lambda + 1) - k);
    let hi = s.n("upper", (mu - 2) + 5 * (mu - 1));
    s.n("expected_upper", 155);
    s.check("lower", LE, "upper")
        .check("upper", EQ, "expected_upper");
    s.done();
    let mut s = r.arith(
        "S4.cuv_lower",
        "c(u,v) >= 154 - 5(mu-1)",
        "pair counts bounded by mu-1",
    );
    s.val("c(u,v)_min", &lo - int(5 * (mu - 1)));
    s.n("expected", 24);
    s.n("c(u,v)_max", mu - 2);
    s.check("c(u,v)_min", EQ, "expected")
        .check("c(u,v)_min", LE, "c(u,v)_max");
    s.done();
    let mut s = r.arith(
        "S4.profiles",
        "the admissible pair-count profiles (24,26,26,26,26,26), (25,25,26,26,26,26) and (25,26,26,26,26,26) have the required sums",
        "enumerated case split for the pair counts of U",
    );
    s.n("sum_a", 24 + 5 * (mu - 1));
    s.n("sum_b", 2 * 25 + 4 * (mu - 1));
    s.n("sum_c", 25 + 5 * (mu - 1));
    s.val("lower", lo.clone());
    s.val("upper", hi);
    s.check("sum_a", EQ, "lower")
        .check("sum_b", EQ, "lower")
        .check("sum_c", EQ, "upper");
    s.note(
        "the enumerated cases are followed; the sentence preceding them is read as a restatement",
    );
    s.done();
    r.structural(
        "S4.cases",
        "at sum 154 every local vertex sees at most two of U; at sum 155 exactly one vertex sees three",
        "enumerated case split for the pair counts of U",
    );

    // S5: the set W
    let mut s = r.arith(
        "S5.w_size",
        "|W| = k - 2(lambda+1) + c(u,v) with c(u,v) in {24, 25}",
        "size of the set W of local vertices adjacent to neither u nor v",
    );
    let w82 = w_size_candidates(p, 24).map_err(|e| rule_err("S5.w_size", e))?;
    let w83 = w_size_candidates(p, 25).map_err(|e| rule_err("S5.w_size", e))?;
    s.n("|W|(24)", w82);
    s.n("|W|(25)", w83);
    s.n("expected_82", 82);
    s.n("expected_83", 83);
    s.check("|W|(24)", EQ, "expected_82")
        .check("|W|(25)", EQ, "expected_83");
    s.done();
    r.structural(
        "S5.cliques",
        "for z in W the non-neighbours of z in W form a clique K_z, else u, v and two of them give a forbidden 5-coclique; adding x keeps it a clique",
        "no 5-coclique through u and v",
    );
    let mut s = r.arith(
        "S5.valency",
        "valencies inside W are lambda - 2(mu-1) = 53 or lambda - 25 - 26 = 54, and K_w then has at least 28 vertices",
        "valency of w in the graph on W",
    );
    s.n("k_w_53", lambda - 2 * (mu - 1));
    s.n("k_w_54", lambda - (mu - 2) - (mu - 1));
    s.n("expected_53", 53);
    s.n("expected_54", 54);
    s.n("K_w_in_82", w82 - 53 - 1);
    s.n("K_w_in_83", w83 - 54 - 1);
    s.n("expected_28", 28);
    s.check("k_w_53", EQ, "expected_53")
        .check("k_w_54", EQ, "expected_54")
        .check("K_w_in_82", EQ, "expected_28")
        .check("K_w_in_83", EQ, "expected_28");
    s.done();

    // S6: |W| = 83
    r.structural(
        "S6.y_clique",
        "case |W| = 83: x together with the vertices of W of valency 54 or 82 forms a clique Y",
        "pair-count case analysis for two valency-54 vertices",
    );
    let mut s = r.arith(
        "S6.y_bound",
        "|Y| <= 32 leaves at least 83 - 31 = 52 vertices of valency 53, more than any clique in W can hold",
        "clique cap applied to Y",
    );
    s.n("cap", cap);
    s.n("valency_53_min", w83 - (cap - 1));
    s.n("expected", 52);
    s.n("clique_in_W_max", cap - 1);
    s.check("valency_53_min", EQ, "expected")
        .check("valency_53_min", GT, "clique_in_W_max");
    s.done();
    let mut s = r.arith(
        "S6.k_z",
        "for non-adjacent z, z' of valency 53 with 25 common neighbours in W, K_z and K_z' have 83 - 53 - 1 = 29 vertices",
        "size of the non-neighbour clique",
    );
    s.n("K_z", w83 - 53 - 1);
    s.n("expected", 29);
    s.check("K_z", EQ, "expected");
    s.done();
    r.structural(
        "S6.pick_w",
        "at most two vertices of C(z,z') see all of K~_z and at most two see all of K~_z'; pick w in C(z,z') seeing neither fully",
        "two such vertices would have at least 28 common neighbours",
    );
    let mut s = r.arith(
        "S6.claim",
        "w, x, z, z' have at least 25 + 24 - 27 = 22 common neighbours",
        "inclusion-exclusion inside the common neighbourhood of z and z'",
    );
    s.n("c(z,z')", mu - 2);
    s.n("quadrangle_min", 24);
    s.n("mu", mu);
    s.n("common", (mu - 2) + 24 - mu);
    s.n("expected", 22);
    s.check("common", EQ, "expected");
    s.done();
    let mut s = r.arith(
        "S6.constant_14",
        "w then has at least (53 - 25)/2 = 14 neighbours in one of K_z, K_z'",
        "halving the remaining neighbours of w",
    );
    let fourteen = s.val("half", rat(53 - 25, 2));
    s.n("expected", 14);
    s.check("half", EQ, "expected");
    s.note(
        "the constant 25 stands where c(z,z') is used elsewhere; kept as given, provenance unclear",
    );
    s.done();
    let (tmin30, tmax30) = restricted(30, lmin, "S6.table_up")?;
    let mut s = r.arith(
        "S6.table_up",
        "with x, w has at least 15 neighbours in the 30-clique K~_z, above t_min, so at least t_max = 24, i.e. 23 in K_z",
        "neighbour-count range for a clique of order 30 at smallest eigenvalue -3",
    );
    s.val("in_K~_z", fourteen + int(1));
    s.n("t_min(30)", tmin30);
    s.n("t_max(30)", tmax30);
    s.n("expected_t_max", 24);
    s.n("in_K_z_min", tmax30 - 1);
    s.check("in_K~_z", GT, "t_min(30)")
        .check("t_max(30)", EQ, "expected_t_max");
    s.done();
    let mut s = r.arith(
        "S6.table_down",
        "then w has at most 54 - 21 - 23 = 10 neighbours in K_z', at most 11 in K~_z', below t_max, so at most t_min = 8",
        "neighbour-count range for a clique of order 30 at smallest eigenvalue -3",
    );
    s.n("in_K_z'", 54 - 21 - (tmax30 - 1));
    s.n("expected", 10);
    s.n("in_K~_z'", 54 - 21 - (tmax30 - 1) + 1);
    s.n("t_max(30)", tmax30);
    s.n("t_min(30)", tmin30);
    s.n("expected_t_min", 8);
    s.check("in_K_z'", EQ, "expected")
        .check("in_K~_z'", LT, "t_max(30)")
        .check("t_min(30)", EQ, "expected_t_min");
    s.done();
    let mut s = r.arith(
        "S6.overlap",
        "K~_w (at least 29 vertices) and K~_z' (30 vertices) share at least 30 - 8 = 22 vertices",
        "w misses at most t_min vertices' worth of K~_z'",
    );
    s.n("overlap", 30 - tmin30);
    s.n("expected", 22);
    s.check("overlap", EQ, "expected");
    s.done();

    // Two large cliques meeting in >= 22 vertices.
    r.structural(
        "L.setup",
        "two distinct cliques of order at least 29 meeting in t >= 22 vertices: either some vertex of the symmetric difference sees the rest of it, or t = 27 and both are maximal of order 29; a non-complete symmetric difference forces t <= mu",
        "large-clique intersection rule",
    );
    let alpha = sym_diff_alpha_min(22, 7, m).map_err(|e| rule_err("L.t22.alpha", e))?;
    let mut s = r.arith(
        "L.t22.alpha",
        "t = 22: the quotient [[21, 14], [22, alpha+6]] on {intersection, symmetric difference} needs det(Q + 3I) >= 0, i.e. alpha >= 23/6",
        "quotient eigenvalues interlace; two-part quotient of two 29-cliques",
    );
    let a = s.val("alpha_min", alpha);
    s.val("expected", rat(23, 6));
    s.val(
        "det_at_alpha_min",
        sym_diff_quotient(22, 7, &a).shifted(&int(m)).det(),
    );
    s.n("zero", 0);
    s.val("24*alpha_min", int(24) * &a);
    s.n("92", 92);
    s.check("alpha_min", EQ, "expected")
        .check("det_at_alpha_min", EQ, "zero")
        .check("24*alpha_min", EQ, "92");
    s.done();
    let mut s = r.arith(
        "L.t22.edges",
        "so at least ceil(7 * 23/6) = 27 edges cross the symmetric difference",
        "two-part quotient of two 29-cliques",
    );
    s.val("required", big(&exactnum::ceil(&(int(7) * &a))));
    s.n("expected", 27);
    s.check("required", EQ, "expected");
    s.done();
    let mut s = r.arith(
        "L.t22.five",
        "a side vertex with 5 cross neighbours and a non-adjacent vertex across share at least 22 + 5 + 1 = 28 > mu common neighbours",
        "common neighbours of vertices at distance two are exactly mu",
    );
    s.n("common", 22 + 5 + 1);
    s.n("mu", mu);
    s.check("common", GT, "mu");
    s.done();
    let mut s = r.arith(
        "L.t22.four",
        "with at most 4 cross neighbours each, 27 edges force a non-adjacent pair with cross degrees summing to 8: 8 + 22 = 30 > mu",
        "common neighbours of vertices at distance two are exactly mu",
    );
    s.n("common", 8 + 22);
    s.n("mu", mu);
    s.check("common", GT, "mu");
    s.done();
    for t in 22..=26 {
        let id = format!("L.t{t}.capacity");
        let chk = sym_diff_check(t, 29 - t, m, mu).map_err(|e| rule_err(&id, e))?;
        let mut s = r.arith(
            &id,
            &format!(
                "t = {t}, sides of {}: the quotient needs at least {} cross edges but the mu-limit on non-adjacent pairs allows at most {}",
                29 - t,
                chk.required_edges,
                chk.capacity
            ),
            "two-part quotient bound versus common-neighbour capacity",
        );
        s.val("alpha_min", chk.alpha_min.clone());
        s.n("required", chk.required_edges);
        s.n("capacity", cross_edge_capacity(29 - t, t, mu));
        s.check("capacity", LT, "required");
        s.note("reconstruction: derived from the quotient bound and the common-neighbour capacity");
        s.done();
    }
    let case = CliqueIntersectionCase::new(27, 3, 2, m).map_err(|e| rule_err("L.t27", e))?;
    let mut s = r.arith(
        "L.t27",
        "t = 27 with orders at least 30 and 29: the three-part quotient gives det(Q + 3I) = -14 < 0 at (t1, t2) = (3, 2); the inequality forces 25(t1 - 4/25)(t2 - 4/25) < 117 while it is at least 3266/25 > 130",
        "three-part quotient of two cliques meeting in 27 vertices",
    );
    s.val("det", three_part_det(&case));
    s.n("expected_det", -14);
    s.n("zero", 0);
    s.val(
        "product_at_corner",
        int(25) * (int(3) - rat(4, 25)) * (int(2) - rat(4, 25)),
    );
    s.val("expected_product", rat(3266, 25));
    s.n("130", 130);
    s.val("allowed_max", int(116) + rat(16, 25));
    s.n("117", 117);
    s.check("det", EQ, "expected_det")
        .check("det", LT, "zero")
        .check("product_at_corner", EQ, "expected_product")
        .check("product_at_corner", GT, "130")
        .check("allowed_max", LT, "117");
    s.done();
    r.structural(
        "L.conclusion",
        "hence two such cliques either have a vertex of the symmetric difference seeing the rest of it, or meet in exactly 27 vertices and are both maximal of order 29",
        "large-clique intersection rule",
    );
    let mut s = r.arith(
        "S6.final",
        "the maximal cliques through K~_w and K~_z' differ and neither contains the other; the second has order at least 30 > 29, contradicting the intersection rule, so |W| != 83",
        "large-clique intersection rule applied to K~_w and K~_z'",
    );
    s.n("order_C2", 30);
    s.n("only_allowed", 29);
    s.check("order_C2", GT, "only_allowed");
    s.done();

    // S7: |W| = 82
    r.structural(
        "S7.regular",
        "case |W| = 82: all valencies in W are 53 and non-adjacent pairs in W have 26 common neighbours; the sub-case with a vertex of valency 81 repeats the 83 argument with 30-vertex cliques and is not mechanized",
        "valency structure for |W| = 82",
    );
    let mut s = r.arith(
        "S7.clique_in_w",
        "x is adjacent to all of W, so cliques inside W have at most cap - 1 = 31 vertices",
        "clique cap",
    );
    s.n("clique_in_W_max", cap - 1);
    s.n("expected", 31);
    s.check("clique_in_W_max", EQ, "expected");
    s.done();
    let lmin_q = int(lmin);
    let mut s = r.arith(
        "S7.join",
        "joining K_4 to the 53-regular graph on 82 vertices keeps smallest eigenvalue -3: (-3-53)(-3+1-4) >= 82*4",
        "join-with-clique criterion (lmin - k)(lmin + 1 - t) >= n t",
    );
    s.val("lhs", (&lmin_q - int(53)) * (&lmin_q + int(1 - 4)));
    s.n("rhs", w82 * 4);
    s.val(
        "criterion_at_lmin",
        join_criterion_polynomial(53, w82, 4).eval(&lmin_q),
    );
    s.n("zero", 0);
    s.n(
        "criterion_holds",
        i64::from(join_clique_preserves_lmin(53, w82, &lmin_q, 4)),
    );
    s.n("one", 1);
    s.n("336", 336);
    s.n("328", 328);
    s.check("lhs", GE, "rhs")
        .check("lhs", EQ, "336")
        .check("rhs", EQ, "328")
        .check("criterion_at_lmin", GE, "zero")
        .check("criterion_holds", EQ, "one");
    s.done();
    let (tmin32, tmax32) = restricted(32, lmin, "S7.join_clique")?;
    let mut s = r.arith(
        "S7.join_clique",
        "K_4 join K_w is a 32-clique; outside vertices see at most 7 or at least 27 of it, i.e. at most 3 or at least 23 of K_w",
        "neighbour-count range for a clique of order 32 at smallest eigenvalue -3",
    );
    s.n("t_min(32)", tmin32);
    s.n("t_max(32)", tmax32);
    s.n("expected_t_min", 7);
    s.n("expected_t_max", 27);
    s.n("low_in_K_w", tmin32 - 4);
    s.n("high_in_K_w", tmax32 - 4);
    s.n("expected_low", 3);
    s.n("expected_high", 23);
    s.check("t_min(32)", EQ, "expected_t_min")
        .check("t_max(32)", EQ, "expected_t_max")
        .check("low_in_K_w", EQ, "expected_low")
        .check("high_in_K_w", EQ, "expected_high");
    s.done();
    let mut s = r.arith(
        "S7.full_adjacency",
        "at most 31 - 28 = 3 vertices of C(w,w') see all of K_w, since they extend it to a clique in W",
        "clique cap inside W",
    );
    s.n("extra", (cap - 1) - (w82 - 53 - 1));
    s.n("expected", 3);
    s.check("extra", EQ, "expected");
    s.done();
    r.structural(
        "S7.pick_z",
        "pick z in C(w,w') missing a vertex p of K_w and a vertex p' of K_w'; as before z has at least 22 neighbours in C(w,w')",
        "counting vertices of C(w,w') fully adjacent to K_w or K_w'",
    );
    let mut s = r.arith(
        "S7.floor",
        "so z has at most floor((53 - 22)/2) = 15 < 23 neighbours in one of K_w, K_w', hence at most 3 there",
        "neighbour-count range for a clique of order 32",
    );
    s.val("half", int(0) + big(&exactnum::floor(&rat(53 - 22, 2))));
    s.n("expected", 15);
    s.n("high_in_K_w", tmax32 - 4);
    s.check("half", EQ, "expected")
        .check("half", LT, "high_in_K_w");
    s.done();
    let mut s = r.arith(
        "S7.overlap",
        "K_z and K_w then share at least 28 - 3 = 25 vertices, K~_z and K~_w at least 26",
        "size of the non-neighbour clique",
    );
    s.n("K_z∩K_w", 28 - (tmin32 - 4));
    s.n("expected", 25);
    s.n("tilde_overlap", 28 - (tmin32 - 4) + 1);
    s.n("22", 22);
    s.check("K_z∩K_w", EQ, "expected")
        .check("tilde_overlap", GE, "22");
    s.done();
    let mut s = r.arith(
        "S7.exact_overlap",
        "both 29-cliques are maximal and meet in exactly 27 vertices, so K_z and K_w meet in exactly 26",
        "large-clique intersection rule",
    );
    s.n("K~_size", 28 + 1);
    s.n("only_allowed", 29);
    s.n("K_overlap", 27 - 1);
    s.n("expected", 26);
    s.check("K~_size", EQ, "only_allowed")
        .check("K_overlap", EQ, "expected");
    s.done();
    r.structural(
        "S7.pick_q",
        "in K_p' at most 5 vertices see 26 of K_z' and at most 5 see 26 of K_w; choose q among the remaining vertices",
        "counting vertices of K_p' by neighbours in K_z' and K_w",
    );
    let mut s = r.arith(
        "S7.q",
        "K_p' has 28 > 5 + 5 vertices, and q has at most 26/2 = 13 < 23 neighbours in one of K_z', K_w, hence at most 3 there; K_q and K_z' share at least 25",
        "neighbour-count range for a clique of order 32",
    );
    s.n("K_p'", 28);
    s.n("excluded", 10);
    s.val("half", rat(26, 2));
    s.n("high_in_K_w", tmax32 - 4);
    s.n("K_q∩K_z'", 28 - 3);
    s.n("expected", 25);
    s.check("K_p'", GT, "excluded")
        .check("half", LT, "high_in_K_w")
        .check("K_q∩K_z'", EQ, "expected");
    s.done();
    let mut s = r.arith(
        "S7.edges_lower",
        "every vertex of K_q outside K_w has at least 23 neighbours in K_w, giving at least 24 * 21 edges between the two differences",
        "neighbour-count range for a clique of order 32",
    );
    s.n("edges", 24 * 21);
    s.n("expected", 504);
    s.check("edges", EQ, "expected");
    s.done();
    let mut s = r.arith(
        CONCLUDING_STEP,
        "edges between K_z' ∪ K_w and K_p' number exactly 26 * 28 = 728 by valency, but at most 2*26*26 - 2*24*21 = 344; contradiction, so |W| != 82",
        "edge count between cliques versus valency 53",
    );
    s.n("exact_edges", (mu - 1) * 28);
    s.n("upper", 2 * 26 * 26 - 2 * 24 * 21);
    s.n("expected_exact", 728);
    s.n("expected_upper", 344);
    s.check("exact_edges", EQ, "expected_exact")
        .check("upper", EQ, "expected_upper")
        .check("exact_edges", GT, "upper");
    s.done();
    r.structural(
        "T.final",
        "|W| lies in {82, 83} and both values are impossible, so no graph with these parameters exists",
        "combination of the two cases",
    );
    Ok(())
}

/// Runs the generic parameter-level rules. Records which fire; never
/// concludes nonexistence.
pub fn rule_out_pipeline(p: &SrgParams) -> FeasibilityReport {
    let spectrum = spectrum_of(p);
    let mut notes = Vec::new();
    let quadrangle = terwilliger_forces_quadrangle(p);
    if let Err(e) = &spectrum {
        notes.push(format!("spectrum rejected: {e}; remaining rules skipped"));
        return FeasibilityReport {
            params: *p,
            spectrum,
            delsarte_bound: None,
            terwilliger_forces_quadrangle: quadrangle,
            coclique_max: coclique_max(p),
            clique_cap: None,
            notes,
        };
    }
    let delsarte = delsarte_bound(p).ok();
    if quadrangle {
        notes.push(format!(
            "k < 50(mu-1) = {}: an induced quadrangle exists",
            50 * (p.mu() - 1)
        ));
    }
    let clique_cap = match cliquegeom::clique_cap_analysis(p) {
        Ok(cap) => {
            notes.extend(cap.provenance);
            Some(cap.cap)
        }
        Err(e) => {
            notes.push(format!("cubic clique rule: {e}"));
            delsarte
        }
    };
    FeasibilityReport {
        params: *p,
        spectrum,
        delsarte_bound: delsarte,
        terwilliger_forces_quadrangle: quadrangle,
        coclique_max: coclique_max(p),
        clique_cap,
        notes,
    }
}
