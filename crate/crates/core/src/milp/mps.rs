//! Free-format MPS.
//!
//! Writing is deterministic: columns in declaration order, each column's
//! entries with the objective first and then rows in declaration order,
//! binaries wrapped in `INTORG`/`INTEND` markers. Numbers use Rust's shortest
//! round-trip formatting, so export, parse and export again reproduces the
//! same bytes.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{MilpModel, RowSense, VarKind};
use crate::error::{Error, Result};

const OBJ_ROW: &str = "obj";

pub fn to_mps(model: &MilpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME {}", model.name);
    out.push_str("OBJSENSE\n    MAX\nROWS\n");
    let _ = writeln!(out, " N  {OBJ_ROW}");
    for row in &model.rows {
        let s = match row.sense {
            RowSense::Le => "L",
            RowSense::Eq => "E",
            RowSense::Ge => "G",
        };
        let _ = writeln!(out, " {s}  {}", row.name);
    }

    let mut columns: Vec<Vec<(&str, f64)>> = vec![Vec::new(); model.variables.len()];
    for &(v, c) in &model.objective {
        columns[v].push((OBJ_ROW, c));
    }
    for row in &model.rows {
        for &(v, c) in &row.terms {
            columns[v].push((&row.name, c));
        }
    }

    out.push_str("COLUMNS\n");
    let mut in_marker = false;
    for (var, entries) in model.variables.iter().zip(&columns) {
        let binary = var.kind == VarKind::Binary;
        if binary != in_marker {
            let tag = if binary { "'INTORG'" } else { "'INTEND'" };
            let _ = writeln!(out, "    MARKER  'MARKER'  {tag}");
            in_marker = binary;
        }
        if entries.is_empty() {
            let _ = writeln!(out, "    {}  {OBJ_ROW}  0", var.name);
        }
        for (row, c) in entries {
            let _ = writeln!(out, "    {}  {row}  {c}", var.name);
        }
    }
    if in_marker {
        out.push_str("    MARKER  'MARKER'  'INTEND'\n");
    }

    out.push_str("RHS\n");
    for row in model.rows.iter().filter(|r| r.rhs != 0.0) {
        let _ = writeln!(out, "    RHS  {}  {}", row.name, row.rhs);
    }

    out.push_str("BOUNDS\n");
    for var in &model.variables {
        let n = &var.name;
        if var.kind == VarKind::Binary {
            let _ = writeln!(out, " UP BND  {n}  1");
            continue;
        }
        if var.lower == var.upper {
            let _ = writeln!(out, " FX BND  {n}  {}", var.lower);
            continue;
        }
        if var.lower == f64::NEG_INFINITY && var.upper == f64::INFINITY {
            let _ = writeln!(out, " FR BND  {n}");
            continue;
        }
        if var.lower == f64::NEG_INFINITY {
            let _ = writeln!(out, " MI BND  {n}");
        } else if var.lower != 0.0 {
            let _ = writeln!(out, " LO BND  {n}  {}", var.lower);
        }
        if var.upper.is_finite() {
            let _ = writeln!(out, " UP BND  {n}  {}", var.upper);
        }
    }
    out.push_str("ENDATA\n");
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Start,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Bounds,
    End,
}

pub fn parse_mps(text: &str) -> Result<MilpModel> {
    let mut model = MilpModel::with_name("");
    let mut section = Section::Start;
    let mut maximize = false;
    let mut obj_name: Option<String> = None;
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut col_index: HashMap<String, usize> = HashMap::new();
    let mut integer = false;
    let mut named = false;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |msg: String| Error::Mps { line: line_no, msg };
        if raw.trim().is_empty() || raw.starts_with('*') {
            continue;
        }
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let header = !raw.starts_with(' ') && !raw.starts_with('\t');
        if header {
            section = match tokens[0] {
                "NAME" => {
                    let name = tokens.get(1).copied().unwrap_or("");
                    let fresh = MilpModel::with_name(name);
                    model.name = fresh.name;
                    model.formulation = fresh.formulation;
                    model.instance_hash = fresh.instance_hash;
                    named = true;
                    Section::Start
                }
                "OBJSENSE" => {
                    if let Some(s) = tokens.get(1) {
                        maximize = parse_sense(s).ok_or_else(|| err(format!("unknown sense {s}")))?;
                        Section::Start
                    } else {
                        Section::ObjSense
                    }
                }
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => Section::End,
                other => return Err(err(format!("unsupported section {other}"))),
            };
            continue;
        }
        match section {
            Section::ObjSense => {
                maximize = parse_sense(tokens[0]).ok_or_else(|| err(format!("unknown sense {}", tokens[0])))?;
            }
            Section::Rows => {
                let [kind, name] = tokens[..] else {
                    return Err(err("ROWS entries need a type and a name".into()));
                };
                let sense = match kind {
                    "N" => {
                        if obj_name.is_none() {
                            obj_name = Some(name.to_string());
                        }
                        continue;
                    }
                    "L" => RowSense::Le,
                    "E" => RowSense::Eq,
                    "G" => RowSense::Ge,
                    _ => return Err(err(format!("unknown row type {kind}"))),
                };
                if row_index.insert(name.to_string(), model.rows.len()).is_some() {
                    return Err(err(format!("duplicate row {name}")));
                }
                model.rows.push(super::Row { name: name.to_string(), terms: Vec::new(), sense, rhs: 0.0 });
            }
            Section::Columns => {
                if tokens.get(1) == Some(&"'MARKER'") {
                    match tokens.get(2).copied() {
                        Some("'INTORG'") => integer = true,
                        Some("'INTEND'") => integer = false,
                        _ => return Err(err("malformed marker".into())),
                    }
                    continue;
                }
                if tokens.len() != 3 && tokens.len() != 5 {
                    return Err(err("COLUMNS entries need one or two (row, value) pairs".into()));
                }
                let col = tokens[0];
                let var = match col_index.get(col) {
                    Some(&v) => v,
                    None => {
                        let (kind, upper) =
                            if integer { (VarKind::Binary, 1.0) } else { (VarKind::Continuous, f64::INFINITY) };
                        let v = model.add_var(col, kind, 0.0, upper);
                        col_index.insert(col.to_string(), v);
                        // integer columns start with the MPS default upper bound until BOUNDS says otherwise
                        if integer {
                            model.variables[v].upper = f64::INFINITY;
                        }
                        v
                    }
                };
                for pair in tokens[1..].chunks(2) {
                    let value = parse_num(pair[1]).ok_or_else(|| err(format!("bad number {}", pair[1])))?;
                    if value == 0.0 {
                        continue;
                    }
                    if Some(pair[0]) == obj_name.as_deref() {
                        model.objective.push((var, value));
                    } else {
                        let &r = row_index.get(pair[0]).ok_or_else(|| err(format!("unknown row {}", pair[0])))?;
                        model.rows[r].terms.push((var, value));
                    }
                }
            }
            Section::Rhs => {
                if tokens.len() != 3 && tokens.len() != 5 {
                    return Err(err("RHS entries need a set name and (row, value) pairs".into()));
                }
                for pair in tokens[1..].chunks(2) {
                    let value = parse_num(pair[1]).ok_or_else(|| err(format!("bad number {}", pair[1])))?;
                    if Some(pair[0]) == obj_name.as_deref() {
                        return Err(err("objective constants are not supported".into()));
                    }
                    let &r = row_index.get(pair[0]).ok_or_else(|| err(format!("unknown row {}", pair[0])))?;
                    model.rows[r].rhs = value;
                }
            }
            Section::Bounds => {
                if tokens.len() < 3 {
                    return Err(err("BOUNDS entries need a type, set name and column".into()));
                }
                let &v = col_index.get(tokens[2]).ok_or_else(|| err(format!("unknown column {}", tokens[2])))?;
                let value = || -> Result<f64> {
                    tokens.get(3).and_then(|s| parse_num(s)).ok_or_else(|| err("bound needs a value".into()))
                };
                let var = &mut model.variables[v];
                match tokens[0] {
                    "UP" | "UI" => var.upper = value()?,
                    "LO" | "LI" => var.lower = value()?,
                    "FX" => {
                        let b = value()?;
                        var.lower = b;
                        var.upper = b;
                    }
                    "FR" => {
                        var.lower = f64::NEG_INFINITY;
                        var.upper = f64::INFINITY;
                    }
                    "MI" => var.lower = f64::NEG_INFINITY,
                    "PL" => var.upper = f64::INFINITY,
                    "BV" => {
                        var.kind = VarKind::Binary;
                        var.lower = 0.0;
                        var.upper = 1.0;
                    }
                    other => return Err(err(format!("unsupported bound type {other}"))),
                }
            }
            Section::Start | Section::End => return Err(err("data line outside of a section".into())),
        }
    }
    if !named {
        return Err(Error::Mps { line: 0, msg: "missing NAME".into() });
    }
    if section != Section::End {
        return Err(Error::Mps { line: text.lines().count(), msg: "missing ENDATA".into() });
    }
    for var in &model.variables {
        if var.kind == VarKind::Binary && (var.lower != 0.0 || var.upper != 1.0) {
            return Err(Error::Mps { line: 0, msg: format!("general integer column {} is not supported", var.name) });
        }
    }
    if !maximize {
        for term in &mut model.objective {
            term.1 = -term.1;
        }
    }
    Ok(model)
}

fn parse_sense(s: &str) -> Option<bool> {
    match s {
        "MAX" | "MAXIMIZE" => Some(true),
        "MIN" | "MINIMIZE" => Some(false),
        _ => None,
    }
}

fn parse_num(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::{build_basic, build_strengthened, Formulation};
    use crate::model::tests::small;
    use crate::model::Mode;

    pub(crate) const TINY_MPS: &str = "\
NAME tiny
OBJSENSE
    MAX
ROWS
 N  obj
 L  c1
COLUMNS
    MARKER  'MARKER'  'INTORG'
    x  obj  1
    x  c1  1
    MARKER  'MARKER'  'INTEND'
RHS
    RHS  c1  1
BOUNDS
 UP BND  x  1
ENDATA
";

    fn tiny() -> MilpModel {
        let mut m = MilpModel::with_name("tiny");
        let x = m.add_var("x", VarKind::Binary, 0.0, 1.0);
        m.add_row("c1", vec![(x, 1.0)], RowSense::Le, 1.0);
        m.add_objective(x, 1.0);
        m
    }

    #[test]
    fn golden_minimal_model() {
        assert_eq!(to_mps(&tiny()), TINY_MPS);
        assert_eq!(parse_mps(TINY_MPS).unwrap(), tiny());
    }

    #[test]
    fn basic_model_round_trips() {
        let inst = small(
            &[0.4, 0.6],
            &[vec![1.0, 0.5], vec![0.2, 1.0]],
            &[vec![2.0, 0.3], vec![1.0, 1.0]],
            &[vec![1.0, 0.5], vec![0.5, 0.0]],
            &[vec![0.7, 1.1], vec![2.5, 0.4]],
            1,
            Mode::AtMost,
        );
        for m in [build_basic(&inst).unwrap(), build_strengthened(&inst).unwrap()] {
            let text = to_mps(&m);
            let back = parse_mps(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(to_mps(&back), text);
        }
        assert_eq!(parse_mps(&to_mps(&build_basic(&inst).unwrap())).unwrap().formulation, Formulation::Basic);
    }

    #[test]
    fn objective_sense_section() {
        assert!(to_mps(&tiny()).contains("OBJSENSE\n    MAX\n"));
        let min = TINY_MPS.replace("    MAX", "    MIN");
        assert_eq!(parse_mps(&min).unwrap().objective, vec![(0, -1.0)]);
        let inline = TINY_MPS.replace("OBJSENSE\n    MAX", "OBJSENSE MAX");
        assert_eq!(parse_mps(&inline).unwrap(), tiny());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_mps("NAME x\nROWS\n N obj\n").is_err());
        let bad_row = TINY_MPS.replace("    x  c1  1", "    x  c9  1");
        assert!(matches!(parse_mps(&bad_row), Err(Error::Mps { line: 10, .. })));
        let general = TINY_MPS.replace(" UP BND  x  1", " UP BND  x  5");
        assert!(parse_mps(&general).is_err());
    }
}
