//! The three commands behind the binary: generic cohomology from input
//! files, cocycle checking, and the built-in verification pipeline.

use std::sync::Arc;

use cohomo_core::quadric::{Mutation, Pipeline, Status, StepSelection};
use cohomo_core::{cohomology, cocycle_defect, is_coboundary, Cochain, GroupTable};

use crate::input::{parse_document_seeded, NamedCochain, ParseError};
use crate::report::Report;

/// Input/validation failure: exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<ParseError> for InputError {
    fn from(e: ParseError) -> Self {
        InputError(e.to_string())
    }
}

fn word_tuple(group: &GroupTable, tuple: &[usize]) -> String {
    let words: Vec<String> = tuple.iter().map(|&g| group.word(g).to_string()).collect();
    format!("({})", words.join(","))
}

fn generator_lines(report: &mut Report, prefix: &str, cochain: &Cochain) {
    let group = cochain.module().group().clone();
    let degree = cochain.degree();
    let mut lines = Vec::new();
    let mut tuple = vec![0usize; degree];
    for rank in 0..cochain.entries() {
        let v = cochain.value_at_rank(rank);
        if v.iter().all(|x| x == &cohomo_core::BigInt::from(0)) {
            continue;
        }
        let mut r = rank;
        for slot in tuple.iter_mut().rev() {
            *slot = r % group.order();
            r /= group.order();
        }
        let vals: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        lines.push(format!("{} = {}", word_tuple(&group, &tuple), vals.join(",")));
    }
    if lines.is_empty() {
        lines.push(String::from("0"));
    }
    for (i, line) in lines.iter().enumerate() {
        report.push(
            &format!("{prefix}.{i}"),
            Status::Info,
            format!("  {line}"),
            line.clone(),
        );
    }
}

/// `compute`: H^degree of the module in `module_text` over the group in
/// `group_text`.
pub fn cmd_compute(
    group_text: &str,
    module_text: &str,
    degree: usize,
    show_generators: bool,
) -> Result<Report, InputError> {
    let group_doc = parse_document_seeded(group_text, None, &mut no_files)?;
    let group: Arc<GroupTable> = group_doc
        .groups
        .into_iter()
        .next()
        .ok_or_else(|| InputError(String::from("group file declares no [group]")))?;
    let module_doc = parse_document_seeded(module_text, Some(group), &mut no_files)?;
    let named = module_doc
        .modules
        .into_iter()
        .next()
        .ok_or_else(|| InputError(String::from("module file declares no [module]")))?;

    let result = cohomology(&named.module, degree)
        .map_err(|e| InputError(format!("cohomology failed: {e}")))?;
    let mut report = Report::default();
    let line = format!("H^{degree} = {}", result.invariants());
    report.push(&format!("compute.h{degree}"), Status::Pass, line.clone(), line);
    if show_generators {
        for (i, gen) in result.generators().iter().enumerate() {
            let head = format!("generator {i}:");
            report.push(
                &format!("compute.generator{i}"),
                Status::Info,
                head.clone(),
                head,
            );
            generator_lines(&mut report, &format!("compute.generator{i}.entry"), gen);
        }
    }
    Ok(report)
}

fn no_files(path: &str) -> Result<String, String> {
    Err(format!("no file loader available for {path}"))
}

/// `check-cocycle`: is the cochain a cocycle, and if so, a coboundary?
pub fn cmd_check_cocycle(
    cochain_text: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
    show_witness: bool,
) -> Result<Report, InputError> {
    let doc = parse_document_seeded(cochain_text, None, load)?;
    let NamedCochain { cochain, .. } = doc
        .cochains
        .into_iter()
        .next()
        .ok_or_else(|| InputError(String::from("file declares no [cochain]")))?;

    let mut report = Report::default();
    match cocycle_defect(&cochain).map_err(|e| InputError(e.to_string()))? {
        Some(position) => {
            let words = word_tuple(cochain.module().group(), &position);
            report.push(
                "check.cocycle",
                Status::Fail,
                format!("cocycle: no (d != 0 at {words})"),
                format!("no at {words}"),
            );
        }
        None => {
            report.push(
                "check.cocycle",
                Status::Pass,
                String::from("cocycle: yes"),
                String::from("yes"),
            );
            let witness = if cochain.degree() == 0 {
                None
            } else {
                is_coboundary(&cochain).map_err(|e| InputError(e.to_string()))?
            };
            match witness {
                Some(w) => {
                    report.push(
                        "check.coboundary",
                        Status::Info,
                        String::from("coboundary: yes"),
                        String::from("yes"),
                    );
                    if show_witness {
                        generator_lines(&mut report, "check.witness", &w);
                    }
                }
                None => {
                    report.push(
                        "check.coboundary",
                        Status::Info,
                        String::from("coboundary: no"),
                        String::from("no"),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// `verify-paper`: runs a slice of the built-in pipeline.
pub fn cmd_verify_paper(step: &str, mutations: &[String]) -> Result<Report, InputError> {
    let selection =
        StepSelection::parse(step).map_err(|e| InputError(e.to_string()))?;
    let mut parsed = Vec::with_capacity(mutations.len());
    for m in mutations {
        parsed.push(Mutation::parse(m).map_err(|e| InputError(e.to_string()))?);
    }
    let pipeline = Pipeline::new(parsed).map_err(|e| InputError(e.to_string()))?;
    let verification = pipeline.run(selection);
    Ok(Report::from_verification(&verification))
}
