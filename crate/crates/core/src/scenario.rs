//! Batch scenarios: an initial state, a list of revision and contraction
//! steps, and belief queries after any step.
//!
//! Scenario files are JSON with `"version": 1`. Worlds are bit-strings in
//! declared-atom order, so `"10"` makes the first atom true and the second
//! false.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{FormulaSet, Language, WorldSet};
use crate::parallel::{ParallelContractionOperator, ParallelRevisionOperator};
use crate::serial::{SerialContraction, SerialRevision};
use crate::tpo::Tpo;

/// The bundled adder scenario: two components, both suspected, then
/// one of them cleared.
pub const ADDER: &str = include_str!("../scenarios/adder.scenario");

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Scenario {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub atoms: Vec<String>,
    #[serde(default)]
    pub initial: Initial,
    #[serde(default)]
    pub operator: ParallelRevisionOperator,
    #[serde(default)]
    pub contraction: ParallelContractionOperator,
    /// Used by `serial-revise` steps.
    #[serde(default = "default_serial")]
    pub serial: SerialRevision,
    /// Used by `serial-contract` steps.
    #[serde(default = "default_serial_contraction")]
    pub serial_contraction: SerialContraction,
    /// Queries on the initial state.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<Query>,
    #[serde(default)]
    pub steps: Vec<Step>,
}

fn default_serial() -> SerialRevision {
    SerialRevision::Natural
}

fn default_serial_contraction() -> SerialContraction {
    SerialContraction::Natural
}

/// `"uniform"`, or blocks of world labels with the most plausible first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Initial {
    Keyword(String),
    Blocks(Vec<Vec<String>>),
}

impl Default for Initial {
    fn default() -> Self {
        Initial::Keyword("uniform".into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(flatten)]
    pub operation: Operation,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<Query>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    ReviseSet(Vec<String>),
    ContractSet(Vec<String>),
    SerialRevise(String),
    SerialContract(String),
}

impl Operation {
    fn describe(&self) -> String {
        match self {
            Operation::ReviseSet(s) => format!("revise-set {{{}}}", s.join(", ")),
            Operation::ContractSet(s) => format!("contract-set {{{}}}", s.join(", ")),
            Operation::SerialRevise(a) => format!("serial-revise {a}"),
            Operation::SerialContract(a) => format!("serial-contract {a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Query {
    Believes(String),
    Compare(String, String),
    ShowTpo,
}

impl Query {
    fn describe(&self) -> String {
        match self {
            Query::Believes(f) => format!("believes {f}"),
            Query::Compare(x, y) => format!("compare {x} {y}"),
            Query::ShowTpo => "show-tpo".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Answer {
    pub query: String,
    pub result: String,
}

/// One state of a run. Index 0 is the initial state and has no operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepTrace {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Tpo>,
    pub output: Tpo,
    /// The belief set, as one formula.
    pub beliefs: String,
    pub answers: Vec<Answer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunTrace {
    /// The scenario that produced this trace, for replay.
    pub scenario: Scenario,
    pub states: Vec<StepTrace>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(Error::Scenario(format!("unknown output format `{other}`"))),
        }
    }
}

fn scenario_error(e: serde_json::Error) -> Error {
    Error::Scenario(format!("line {}, column {}: {e}", e.line(), e.column()))
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        let scenario: Scenario = serde_json::from_str(text).map_err(scenario_error)?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text)
    }

    pub fn adder() -> Scenario {
        Scenario::from_json(ADDER).expect("bundled scenario is valid")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenarios serialize")
    }

    pub fn language(&self) -> Result<Language> {
        Language::new(&self.atoms)
    }

    /// Checks the version, the initial state, and that every formula and
    /// world label parses.
    pub fn validate(&self) -> Result<()> {
        if self.version != SCENARIO_VERSION {
            return Err(Error::Scenario(format!(
                "unsupported version {} (expected {SCENARIO_VERSION})",
                self.version
            )));
        }
        let lang = self.language()?;
        self.initial_tpo(&lang)?;
        let check = |index: usize, op: Option<&Operation>, queries: &[Query]| -> Result<()> {
            let at = |e: Error| Error::Step {
                index,
                source: Box::new(e),
            };
            match op {
                Some(Operation::ReviseSet(s) | Operation::ContractSet(s)) => {
                    parse_set(&lang, s).map_err(at)?;
                }
                Some(Operation::SerialRevise(a) | Operation::SerialContract(a)) => {
                    lang.parse(a).map_err(at)?;
                }
                None => {}
            }
            for q in queries {
                match q {
                    Query::Believes(f) => {
                        lang.parse(f).map_err(at)?;
                    }
                    Query::Compare(x, y) => {
                        lang.parse_world(x).map_err(at)?;
                        lang.parse_world(y).map_err(at)?;
                    }
                    Query::ShowTpo => {}
                }
            }
            Ok(())
        };
        check(0, None, &self.queries)?;
        for (i, step) in self.steps.iter().enumerate() {
            check(i + 1, Some(&step.operation), &step.queries)?;
        }
        Ok(())
    }

    fn initial_tpo(&self, lang: &Language) -> Result<Tpo> {
        match &self.initial {
            Initial::Keyword(k) if k == "uniform" => Ok(Tpo::uniform(lang.atom_count())),
            Initial::Keyword(k) => Err(Error::Scenario(format!(
                "unknown initial state `{k}` (expected \"uniform\" or a list of blocks)"
            ))),
            Initial::Blocks(blocks) => Tpo::from_labels(lang.atom_count(), blocks),
        }
    }

    /// Executes every step in order.
    pub fn run(&self) -> Result<RunTrace> {
        self.validate()?;
        let lang = self.language()?;
        let mut current = self.initial_tpo(&lang)?;
        let mut states = vec![StepTrace {
            index: 0,
            operation: None,
            input: None,
            beliefs: beliefs(&current, &lang),
            answers: answer_all(&current, &lang, &self.queries)?,
            output: current.clone(),
        }];
        for (i, step) in self.steps.iter().enumerate() {
            let index = i + 1;
            let next = self.apply(&current, &step.operation, &lang).map_err(|e| Error::Step {
                index,
                source: Box::new(e),
            })?;
            states.push(StepTrace {
                index,
                operation: Some(step.operation.describe()),
                input: Some(current),
                beliefs: beliefs(&next, &lang),
                answers: answer_all(&next, &lang, &step.queries)?,
                output: next.clone(),
            });
            current = next;
        }
        Ok(RunTrace {
            scenario: self.clone(),
            states,
        })
    }

    fn apply(&self, t: &Tpo, op: &Operation, lang: &Language) -> Result<Tpo> {
        match op {
            Operation::ReviseSet(s) => self.operator.revise(t, &parse_set(lang, s)?, lang),
            Operation::ContractSet(s) => Ok(self.contraction.contract(t, &parse_set(lang, s)?, lang)),
            Operation::SerialRevise(a) => self.serial.apply_formula(t, &lang.parse(a)?, lang),
            Operation::SerialContract(a) => {
                Ok(self.serial_contraction.apply_formula(t, &lang.parse(a)?, lang))
            }
        }
    }
}

fn parse_set(lang: &Language, members: &[String]) -> Result<FormulaSet> {
    members.iter().map(|m| lang.parse(m)).collect()
}

fn beliefs(t: &Tpo, lang: &Language) -> String {
    crate::logic::Formula::from_models(t.belief_worlds(), lang).render(lang)
}

fn answer_all(t: &Tpo, lang: &Language, queries: &[Query]) -> Result<Vec<Answer>> {
    queries
        .iter()
        .map(|q| {
            let result = match q {
                Query::Believes(f) => {
                    let models: WorldSet = lang.parse(f)?.models(lang);
                    t.belief_worlds().is_subset(&models).to_string()
                }
                Query::Compare(x, y) => {
                    let symbol = match t.compare(lang.parse_world(x)?, lang.parse_world(y)?) {
                        Ordering::Less => "<",
                        Ordering::Equal => "~",
                        Ordering::Greater => ">",
                    };
                    format!("{x} {symbol} {y}")
                }
                Query::ShowTpo => t.render(),
            };
            Ok(Answer {
                query: q.describe(),
                result,
            })
        })
        .collect()
}

/// Loads and runs a scenario file.
pub fn run_scenario(path: impl AsRef<Path>) -> Result<RunTrace> {
    Scenario::load(path)?.run()
}

impl RunTrace {
    pub fn from_json(text: &str) -> Result<RunTrace> {
        serde_json::from_str(text).map_err(scenario_error)
    }

    /// Re-runs the embedded scenario.
    pub fn replay(&self) -> Result<RunTrace> {
        self.scenario.run()
    }

    pub fn final_state(&self) -> &StepTrace {
        self.states.last().expect("a trace has an initial state")
    }

    /// The answer to the query rendered as `query` at step `index`.
    pub fn answer(&self, index: usize, query: &str) -> Option<&str> {
        self.states
            .get(index)?
            .answers
            .iter()
            .find(|a| a.query == query)
            .map(|a| a.result.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => serde_json::to_string_pretty(self).expect("traces serialize") + "\n",
            Format::Dot => export_dot(self),
        }
    }

    pub fn to_text(&self) -> String {
        let s = &self.scenario;
        let mut out = String::new();
        if let Some(name) = &s.name {
            let _ = writeln!(out, "scenario: {name}");
        }
        let _ = writeln!(out, "atoms: {}", s.atoms.join(", "));
        let _ = writeln!(out, "operator: {}", s.operator);
        for state in &self.states {
            match &state.operation {
                Some(op) => {
                    let _ = writeln!(out, "step {}: {op}", state.index);
                }
                None => {
                    let _ = writeln!(out, "step 0: initial");
                }
            }
            if let Some(input) = &state.input {
                let _ = writeln!(out, "  input:   {input}");
            }
            let _ = writeln!(out, "  output:  {}", state.output);
            let _ = writeln!(out, "  beliefs: {}", state.beliefs);
            for a in &state.answers {
                let _ = writeln!(out, "  {} => {}", a.query, a.result);
            }
        }
        out
    }
}

/// Graphviz rendering: one cluster per state, one node per world, worlds of
/// a block on the same rank, and edges from each block to the next.
pub fn export_dot(trace: &RunTrace) -> String {
    let mut out = String::from("digraph trace {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
    for state in &trace.states {
        let i = state.index;
        let label = match &state.operation {
            Some(op) => format!("step {i}: {op}"),
            None => "step 0: initial".to_string(),
        };
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label=\"{}\";", label.replace('"', "\\\""));
        let atoms = state.output.atoms();
        let node = |w: crate::logic::World| format!("s{i}_{}", w.label(atoms));
        for block in state.output.blocks() {
            let names: Vec<String> = block.iter().map(node).collect();
            for w in block.iter() {
                let _ = writeln!(out, "    {} [label=\"{}\"];", node(w), w.label(atoms));
            }
            let _ = writeln!(out, "    {{ rank=same; {}; }}", names.join("; "));
        }
        for pair in state.output.blocks().windows(2) {
            for x in pair[0].iter() {
                for y in pair[1].iter() {
                    let _ = writeln!(out, "    {} -> {};", node(x), node(y));
                }
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Outcome of the bundled self-test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfTest {
    pub trace: RunTrace,
    /// Each checked fact with whether it held.
    pub facts: Vec<(String, bool)>,
}

impl SelfTest {
    pub fn passed(&self) -> bool {
        self.facts.iter().all(|(_, ok)| *ok)
    }
}

/// Runs the bundled adder scenario and checks that neither component
/// is believed faulty initially, and that `A` is believed after revising by
/// `{A, B}` and then `{~B}`.
pub fn self_test() -> Result<SelfTest> {
    let trace = Scenario::adder().run()?;
    let last = trace.states.len() - 1;
    let fact = |index: usize, query: &str, expected: &str| {
        (
            format!("step {index}: {query} is {expected}"),
            trace.answer(index, query) == Some(expected),
        )
    };
    let facts = vec![
        fact(0, "believes A", "false"),
        fact(0, "believes B", "false"),
        fact(last, "believes A", "true"),
        (
            "replay reproduces the trace".to_string(),
            trace.replay().as_ref() == Ok(&trace),
        ),
    ];
    Ok(SelfTest { trace, facts })
}
