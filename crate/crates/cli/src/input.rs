//! The sectioned input format for groups, modules, cochains and short exact
//! sequences.
//!
//! Documents are UTF-8 text split into `[group]`, `[module]`, `[cochain]`
//! and `[ses]` sections of `key = value` lines. `#` starts a comment.
//! Matrices are semicolon-separated rows of comma-separated integers
//! (`none` for an empty matrix); group elements are written as generator
//! words joined by `*`, identity `1`. Unknown keys are errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use cohomo_core::{BigInt, Cochain, FinAbGroup, GModule, GroupTable, IntMatrix, ModuleMap,
    ShortExactSeq};

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn core_err(line: usize, e: cohomo_core::Error) -> ParseError {
    ParseError {
        line,
        message: e.to_string(),
    }
}

/// A module together with its declared generator names and value aliases.
#[derive(Clone)]
pub struct NamedModule {
    pub name: Option<String>,
    pub module: Arc<GModule>,
    pub gen_names: Vec<String>,
    pub aliases: BTreeMap<String, Vec<BigInt>>,
}

/// A cochain whose module (and group) were declared inline or loaded from
/// referenced files.
pub struct NamedCochain {
    pub cochain: Cochain,
    pub module: NamedModule,
}

/// Everything a document declares, in order of appearance.
#[derive(Default)]
pub struct Document {
    pub groups: Vec<Arc<GroupTable>>,
    pub modules: Vec<NamedModule>,
    pub cochains: Vec<NamedCochain>,
    pub sequences: Vec<ShortExactSeq>,
}

struct RawSection {
    kind: String,
    line: usize,
    entries: Vec<(usize, String, String)>,
}

fn split_sections(text: &str) -> Result<Vec<RawSection>, ParseError> {
    let mut sections: Vec<RawSection> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return err(line_no, "unterminated section header");
            };
            sections.push(RawSection {
                kind: name.trim().to_string(),
                line: line_no,
                entries: Vec::new(),
            });
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(line_no, "expected `key = value`");
        };
        let Some(section) = sections.last_mut() else {
            return err(line_no, "content before the first section header");
        };
        section
            .entries
            .push((line_no, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(sections)
}

fn parse_matrix(line: usize, value: &str, cols_hint: Option<usize>) -> Result<IntMatrix, ParseError> {
    if value == "none" {
        return Ok(IntMatrix::zeros(0, cols_hint.unwrap_or(0)));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for row in value.split(';') {
        let mut entries = Vec::new();
        for cell in row.split(',') {
            let cell = cell.trim();
            let v: BigInt = cell
                .parse()
                .map_err(|_| ParseError {
                    line,
                    message: format!("bad integer `{cell}`"),
                })?;
            entries.push(v);
        }
        rows.push(entries);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return err(line, "ragged matrix rows");
    }
    IntMatrix::from_bigint_rows(rows, cols).map_err(|e| core_err(line, e))
}

fn parse_vector(line: usize, value: &str) -> Result<Vec<BigInt>, ParseError> {
    value
        .split(',')
        .map(|cell| {
            let cell = cell.trim();
            cell.parse::<BigInt>().map_err(|_| ParseError {
                line,
                message: format!("bad integer `{cell}`"),
            })
        })
        .collect()
}

fn parse_names(value: &str) -> Vec<String> {
    if value.is_empty() {
        return Vec::new();
    }
    value.split(',').map(|s| s.trim().to_string()).collect()
}

fn parse_group(section: &RawSection) -> Result<Arc<GroupTable>, ParseError> {
    let mut generators: Option<Vec<String>> = None;
    let mut orders: Option<Vec<u64>> = None;
    let mut elements: Option<Vec<String>> = None;
    let mut mult: Option<(usize, String)> = None;
    for (line, key, value) in &section.entries {
        match key.as_str() {
            "generators" => generators = Some(parse_names(value)),
            "orders" => {
                let mut parsed = Vec::new();
                for part in value.split(',') {
                    let part = part.trim();
                    parsed.push(part.parse::<u64>().map_err(|_| ParseError {
                        line: *line,
                        message: format!("bad order `{part}`"),
                    })?);
                }
                orders = Some(parsed);
            }
            "elements" => elements = Some(parse_names(value)),
            "mult" => mult = Some((*line, value.clone())),
            other => return err(*line, format!("unknown key `{other}` in [group]")),
        }
    }
    let generators = generators.unwrap_or_default();
    match (orders, elements, mult) {
        (Some(orders), None, None) => {
            if orders.len() != generators.len() {
                return err(section.line, "orders and generators must have equal length");
            }
            let gens: Vec<(&str, u64)> = generators
                .iter()
                .map(String::as_str)
                .zip(orders.iter().copied())
                .collect();
            GroupTable::abelian(&gens).map_err(|e| core_err(section.line, e))
        }
        (None, Some(elements), Some((mline, mult))) => {
            let m = parse_matrix(mline, &mult, None)?;
            if m.rows() != elements.len() || m.cols() != elements.len() {
                return err(mline, "mult table must be square of the element count");
            }
            let mut rows = Vec::with_capacity(m.rows());
            for i in 0..m.rows() {
                let mut row = Vec::with_capacity(m.cols());
                for j in 0..m.cols() {
                    let v = m.at(i, j);
                    let idx = usize::try_from(v).map_err(|_| ParseError {
                        line: mline,
                        message: format!("bad table index `{v}`"),
                    })?;
                    row.push(idx);
                }
                rows.push(row);
            }
            GroupTable::from_table(generators, elements, rows).map_err(|e| core_err(section.line, e))
        }
        _ => err(
            section.line,
            "a [group] needs either generators+orders or elements+mult",
        ),
    }
}

/// Per-element action matrices from per-generator ones, following words.
fn extend_action(
    group: &Arc<GroupTable>,
    gen_mats: &BTreeMap<String, IntMatrix>,
    n: usize,
    line: usize,
) -> Result<Vec<IntMatrix>, ParseError> {
    let mut out = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let word = group.word(g);
        let mut m = IntMatrix::identity(n);
        if word != "1" {
            for part in word.split('*') {
                let Some(mat) = gen_mats.get(part) else {
                    return err(line, format!("no action matrix for generator `{part}`"));
                };
                m = mat.mul(&m).map_err(|e| core_err(line, e))?;
            }
        }
        out.push(m);
    }
    Ok(out)
}

fn parse_module(
    section: &RawSection,
    group: &Arc<GroupTable>,
) -> Result<NamedModule, ParseError> {
    let mut name: Option<String> = None;
    let mut gen_names: Option<Vec<String>> = None;
    let mut relations: Option<(usize, String)> = None;
    let mut actions: BTreeMap<String, IntMatrix> = BTreeMap::new();
    let mut aliases: BTreeMap<String, Vec<BigInt>> = BTreeMap::new();
    let mut alias_lines: Vec<(usize, String, String)> = Vec::new();
    for (line, key, value) in &section.entries {
        if let Some(gen) = key.strip_prefix("action.") {
            actions.insert(gen.to_string(), parse_matrix(*line, value, None)?);
        } else if let Some(alias) = key.strip_prefix("alias.") {
            alias_lines.push((*line, alias.to_string(), value.clone()));
        } else {
            match key.as_str() {
                "name" => name = Some(value.clone()),
                "generators" => gen_names = Some(parse_names(value)),
                "relations" => relations = Some((*line, value.clone())),
                other => return err(*line, format!("unknown key `{other}` in [module]")),
            }
        }
    }
    let gen_names =
        gen_names.ok_or_else(|| ParseError {
            line: section.line,
            message: "missing `generators` in [module]".into(),
        })?;
    let n = gen_names.len();
    let rel = match relations {
        Some((line, value)) => parse_matrix(line, &value, Some(n))?,
        None => IntMatrix::zeros(0, n),
    };
    let carrier = FinAbGroup::new(n, rel).map_err(|e| core_err(section.line, e))?;

    for gname in group.generator_names() {
        if !actions.contains_key(gname) {
            return err(
                section.line,
                format!("missing action.{gname} for a declared group generator"),
            );
        }
    }
    for key in actions.keys() {
        if !group.generator_names().contains(key) {
            return err(section.line, format!("action.{key} does not name a group generator"));
        }
    }
    let per_element = extend_action(group, &actions, n, section.line)?;
    let module = GModule::new(group.clone(), carrier.clone(), per_element)
        .map_err(|e| core_err(section.line, e))?;

    for (line, alias, value) in alias_lines {
        let v = parse_vector(line, &value)?;
        if v.len() != n {
            return err(line, "alias vector has the wrong length");
        }
        aliases.insert(alias, v);
    }
    Ok(NamedModule {
        name,
        module,
        gen_names,
        aliases,
    })
}

fn parse_tuple(
    line: usize,
    spec: &str,
    group: &GroupTable,
    degree: usize,
) -> Result<Vec<usize>, ParseError> {
    if degree == 0 {
        if spec == "()" {
            return Ok(Vec::new());
        }
        return err(line, "degree-0 cochains use the key `value.()`");
    }
    let mut tuple = Vec::new();
    for word in spec.split(',') {
        let word = word.trim();
        match group.find_word(word) {
            Some(idx) => tuple.push(idx),
            None => return err(line, format!("unknown group element `{word}`")),
        }
    }
    if tuple.len() != degree {
        return err(line, format!("tuple has {} entries, degree is {degree}", tuple.len()));
    }
    Ok(tuple)
}

fn parse_value(
    line: usize,
    value: &str,
    module: &NamedModule,
) -> Result<Vec<BigInt>, ParseError> {
    let value = value.trim();
    if let Some(v) = module.aliases.get(value) {
        return Ok(v.clone());
    }
    if let Some(stripped) = value.strip_prefix('-') {
        if let Some(v) = module.aliases.get(stripped) {
            return Ok(v.iter().map(|x| -x).collect());
        }
    }
    if value == "1" {
        return Ok(vec![BigInt::from(0); module.gen_names.len()]);
    }
    let v = parse_vector(line, value)?;
    if v.len() != module.gen_names.len() {
        return err(line, "value vector has the wrong length");
    }
    Ok(v)
}

fn parse_cochain(
    section: &RawSection,
    module: &NamedModule,
) -> Result<Cochain, ParseError> {
    let mut degree: Option<usize> = None;
    let mut values: Vec<(usize, String, String)> = Vec::new();
    for (line, key, value) in &section.entries {
        if let Some(tuple) = key.strip_prefix("value.") {
            values.push((*line, tuple.to_string(), value.clone()));
        } else {
            match key.as_str() {
                "degree" => {
                    degree = Some(value.parse().map_err(|_| ParseError {
                        line: *line,
                        message: format!("bad degree `{value}`"),
                    })?)
                }
                "group_file" | "module_file" => {}
                other => return err(*line, format!("unknown key `{other}` in [cochain]")),
            }
        }
    }
    let degree = degree.ok_or_else(|| ParseError {
        line: section.line,
        message: "missing `degree` in [cochain]".into(),
    })?;
    let mut cochain = Cochain::zero(module.module.clone(), degree)
        .map_err(|e| core_err(section.line, e))?;
    let group = module.module.group().clone();
    for (line, tuple_spec, value) in values {
        let tuple = parse_tuple(line, &tuple_spec, &group, degree)?;
        let v = parse_value(line, &value, module)?;
        cochain.set(&tuple, &v).map_err(|e| core_err(line, e))?;
    }
    Ok(cochain)
}

/// Parses a whole document. Later sections may reference earlier ones:
/// `[module]` uses the last `[group]`, `[cochain]` the last `[module]`
/// (unless it names `group_file`/`module_file`, resolved by the caller via
/// [`parse_document_with`]), and `[ses]` names three earlier modules.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    parse_document_with(text, &mut |path| {
        Err(format!("file references are not available here: {path}"))
    })
}

/// Like [`parse_document`] but resolves `group_file`/`module_file` keys
/// through the provided loader, which returns file contents.
pub fn parse_document_with(
    text: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<Document, ParseError> {
    parse_document_seeded(text, None, load)
}

/// Parses with an optional pre-declared group, so a `[module]` file can be
/// combined with a separately loaded `[group]` file.
pub fn parse_document_seeded(
    text: &str,
    seed_group: Option<Arc<GroupTable>>,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<Document, ParseError> {
    let sections = split_sections(text)?;
    let mut doc = Document::default();
    if let Some(g) = seed_group {
        doc.groups.push(g);
    }
    for section in &sections {
        match section.kind.as_str() {
            "group" => doc.groups.push(parse_group(section)?),
            "module" => {
                let group = doc.groups.last().cloned().ok_or_else(|| ParseError {
                    line: section.line,
                    message: "[module] needs a preceding [group]".into(),
                })?;
                doc.modules.push(parse_module(section, &group)?);
            }
            "cochain" => {
                let mut module: Option<NamedModule> = None;
                for (line, key, value) in &section.entries {
                    if key == "module_file" {
                        let text = load(value).map_err(|message| ParseError {
                            line: *line,
                            message,
                        })?;
                        let sub = parse_document_with(&text, load)?;
                        module = sub.modules.into_iter().next();
                        if module.is_none() {
                            return err(*line, "referenced file declares no module");
                        }
                    }
                }
                let module = match module {
                    Some(m) => m,
                    None => doc.modules.last().cloned().ok_or_else(|| ParseError {
                        line: section.line,
                        message: "[cochain] needs a module (inline or module_file)".into(),
                    })?,
                };
                let cochain = parse_cochain(section, &module)?;
                doc.cochains.push(NamedCochain { cochain, module });
            }
            "ses" => {
                let mut sub = None;
                let mut mid = None;
                let mut quot = None;
                let mut inj = None;
                let mut surj = None;
                let mut hint = None;
                for (line, key, value) in &section.entries {
                    match key.as_str() {
                        "sub" => sub = Some((*line, value.clone())),
                        "mid" => mid = Some((*line, value.clone())),
                        "quot" => quot = Some((*line, value.clone())),
                        "inj" => inj = Some(parse_matrix(*line, value, None)?),
                        "surj" => surj = Some(parse_matrix(*line, value, None)?),
                        "section" => hint = Some(parse_matrix(*line, value, None)?),
                        other => return err(*line, format!("unknown key `{other}` in [ses]")),
                    }
                }
                let find = |spec: Option<(usize, String)>| -> Result<Arc<GModule>, ParseError> {
                    let (line, name) = spec.ok_or_else(|| ParseError {
                        line: section.line,
                        message: "[ses] needs sub, mid and quot module names".into(),
                    })?;
                    doc.modules
                        .iter()
                        .find(|m| m.name.as_deref() == Some(name.as_str()))
                        .map(|m| m.module.clone())
                        .ok_or_else(|| ParseError {
                            line,
                            message: format!("no module named `{name}`"),
                        })
                };
                let sub = find(sub)?;
                let mid = find(mid)?;
                let quot = find(quot)?;
                let inj = inj.ok_or_else(|| ParseError {
                    line: section.line,
                    message: "[ses] needs `inj`".into(),
                })?;
                let surj = surj.ok_or_else(|| ParseError {
                    line: section.line,
                    message: "[ses] needs `surj`".into(),
                })?;
                let inj = ModuleMap::new(sub, mid.clone(), inj)
                    .map_err(|e| core_err(section.line, e))?;
                let surj =
                    ModuleMap::new(mid, quot, surj).map_err(|e| core_err(section.line, e))?;
                let ses = ShortExactSeq::new(inj, surj, hint)
                    .map_err(|e| core_err(section.line, e))?;
                doc.sequences.push(ses);
            }
            other => return err(section.line, format!("unknown section [{other}]")),
        }
    }
    Ok(doc)
}

fn write_matrix(out: &mut String, m: &IntMatrix) {
    if m.rows() == 0 {
        out.push_str("none");
        return;
    }
    for i in 0..m.rows() {
        if i > 0 {
            out.push_str("; ");
        }
        for j in 0..m.cols() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", m.at(i, j));
        }
    }
}

/// Serializes a group back into document form.
pub fn group_to_document(group: &GroupTable) -> String {
    let mut out = String::from("[group]\n");
    let _ = writeln!(out, "generators = {}", group.generator_names().join(", "));
    if let Some(orders) = group.generator_orders() {
        let list: Vec<String> = orders.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "orders = {}", list.join(", "));
    } else {
        let _ = writeln!(out, "elements = {}", group.element_words().join(", "));
        let mut table = String::new();
        for a in 0..group.order() {
            if a > 0 {
                table.push_str("; ");
            }
            for b in 0..group.order() {
                if b > 0 {
                    table.push(',');
                }
                let _ = write!(table, "{}", group.mul(a, b));
            }
        }
        let _ = writeln!(out, "mult = {table}");
    }
    out
}

/// Serializes a module (with its group) back into document form.
pub fn module_to_document(named: &NamedModule) -> String {
    let group = named.module.group();
    let mut out = group_to_document(group);
    out.push_str("\n[module]\n");
    if let Some(name) = &named.name {
        let _ = writeln!(out, "name = {name}");
    }
    let _ = writeln!(out, "generators = {}", named.gen_names.join(", "));
    let mut rel = String::new();
    write_matrix(&mut rel, named.module.carrier().relations());
    let _ = writeln!(out, "relations = {rel}");
    for (i, gname) in group.generator_names().iter().enumerate() {
        let idx = group
            .exponents()
            .and_then(|_| {
                let mut exps = vec![0u32; group.generator_names().len()];
                exps[i] = 1;
                group.element_by_exponents(&exps)
            })
            .or_else(|| group.find_word(gname));
        if let Some(idx) = idx {
            let mut mat = String::new();
            write_matrix(&mut mat, named.module.action(idx));
            let _ = writeln!(out, "action.{gname} = {mat}");
        }
    }
    for (alias, v) in &named.aliases {
        let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "alias.{alias} = {}", list.join(","));
    }
    out
}

/// Serializes a cochain (with module and group inline).
pub fn cochain_to_document(named: &NamedCochain) -> String {
    let mut out = module_to_document(&named.module);
    out.push_str("\n[cochain]\n");
    let c = &named.cochain;
    let _ = writeln!(out, "degree = {}", c.degree());
    let group = c.module().group();
    let degree = c.degree();
    let mut tuple = vec![0usize; degree];
    for rank in 0..c.entries() {
        let v = c.value_at_rank(rank);
        if v.iter().all(|x| x == &BigInt::from(0)) {
            // re-ranking below still needs the tuple advanced
        } else {
            unrank(rank, group.order(), &mut tuple);
            let words: Vec<String> = tuple.iter().map(|&g| group.word(g).to_string()).collect();
            let key = if degree == 0 {
                String::from("()")
            } else {
                words.join(",")
            };
            let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "value.{key} = {}", list.join(","));
        }
    }
    out
}

fn unrank(mut rank: usize, order: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = rank % order;
        rank /= order;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CASE_I: &str = "\
# case (i): [k':k] = 4
[group]
generators = s, t
orders = 2, 2

[module]
generators = L1
relations = none
action.s = -1
action.t = 1
";

    #[test]
    fn parse_case_i() {
        let doc = parse_document(CASE_I).unwrap();
        assert_eq!(doc.groups.len(), 1);
        assert_eq!(doc.groups[0].order(), 4);
        let m = &doc.modules[0];
        assert_eq!(m.gen_names, ["L1"]);
        assert_eq!(m.module.carrier().n_gen(), 1);
    }

    #[test]
    fn unknown_key_is_an_error() {
        let text = "[group]\ngenerators = s\norders = 2\nbogus = 1\n";
        let e = parse_document(text).err().unwrap();
        assert!(e.message.contains("unknown key"));
    }

    #[test]
    fn cochain_with_aliases() {
        let text = "\
[group]
generators = s, t
orders = 2, 2

[module]
generators = alpha, gamma, mu, eps
relations = 0,0,0,2
action.s = 1,0,0,0; 0,1,0,0; 0,0,1,0; 0,1,0,1
action.t = 1,0,0,0; 0,1,0,0; 0,0,1,0; 1,0,0,1
alias.mu = 0,0,1,0
alias.-1 = 0,0,0,1

[cochain]
degree = 2
value.t,s = mu
value.s*t,s = -mu
value.t,t = -1
";
        let doc = parse_document(text).unwrap();
        let c = &doc.cochains[0].cochain;
        let g = doc.groups[0].clone();
        let t = g.find_word("t").unwrap();
        let s = g.find_word("s").unwrap();
        let st = g.find_word("s*t").unwrap();
        assert_eq!(c.get(&[t, s]), &[0.into(), 0.into(), 1.into(), 0.into()]);
        assert_eq!(c.get(&[st, s]), &[0.into(), 0.into(), (-1).into(), 0.into()]);
        assert_eq!(c.get(&[t, t]), &[0.into(), 0.into(), 0.into(), 1.into()]);
    }

    #[test]
    fn ses_section_round_trips_through_parser() {
        let text = "\
[group]
generators = s
orders = 2

[module]
name = A
generators = x
relations = none
action.s = 1

[module]
name = B
generators = y
relations = none
action.s = 1

[module]
name = C
generators = z
relations = 2
action.s = 1

[ses]
sub = A
mid = B
quot = C
inj = 2
surj = 1
section = 1
";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.sequences.len(), 1);
    }

    #[test]
    fn group_round_trip() {
        let g = GroupTable::abelian(&[("s", 2), ("t", 4)]).unwrap();
        let text = group_to_document(&g);
        let doc = parse_document(&text).unwrap();
        assert_eq!(*doc.groups[0], *g);
    }
}
