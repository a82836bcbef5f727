//! JSON documents for every object the tools exchange: structure-constant
//! data, series, braid words and element pairs.
//!
//! Documents are `{"format": 1, "kind": ..., "name"?, "payload": ...}` with
//! scalars as canonical `p/q` strings, tensors as nested arrays indexed
//! [i][j][k] and series as degree-lex term lists.  Printing is
//! deterministic (object keys sorted, declared array orders kept), parsing
//! is strict, and parse of a printed document reproduces it byte for byte.

use crate::alphabet::{Alphabet, Monomial};
use crate::braid::BraidWord;
use crate::gtrel::GTElement;
use crate::hgt::HGTPair;
use crate::hopf::{HopfData, Tensor3};
use crate::ihara::MetrizedLieAlgebra;
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::series::NCSeries;
use crate::trialgebra::{QuadraalgebraData, TrialgebraData};
use num_traits::Zero;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
}

fn semantic(path: &str, message: impl Into<String>) -> IoError {
    IoError::Semantic { path: path.to_string(), message: message.into() }
}

/// One file's worth of content; the payload layout depends on the kind tag.
#[derive(Debug, Clone)]
pub enum Document {
    Hopf { name: Option<String>, data: HopfData },
    Trialgebra { name: Option<String>, data: TrialgebraData },
    Quadraalgebra { name: Option<String>, data: QuadraalgebraData },
    LieMetrized { name: Option<String>, data: MetrizedLieAlgebra },
    Series { name: Option<String>, data: NCSeries },
    Braid { name: Option<String>, data: BraidWord },
    GT { name: Option<String>, data: GTElement },
    HGT { name: Option<String>, data: HGTPair },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Hopf { .. } => "hopf",
            Document::Trialgebra { .. } => "trialgebra",
            Document::Quadraalgebra { .. } => "quadraalgebra",
            Document::LieMetrized { .. } => "lie-metrized",
            Document::Series { .. } => "series",
            Document::Braid { .. } => "braid",
            Document::GT { .. } => "gt-element",
            Document::HGT { .. } => "hgt-pair",
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Document::Hopf { name, .. }
            | Document::Trialgebra { name, .. }
            | Document::Quadraalgebra { name, .. }
            | Document::LieMetrized { name, .. }
            | Document::Series { name, .. }
            | Document::Braid { name, .. }
            | Document::GT { name, .. }
            | Document::HGT { name, .. } => name.as_deref(),
        }
    }
}

fn scalar_value(c: &Scalar) -> Value {
    Value::String(format_scalar(c))
}

fn vector_value(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_value).collect())
}

fn matrix_value(n: usize, flat: &[Scalar]) -> Value {
    Value::Array((0..n).map(|r| vector_value(&flat[r * n..(r + 1) * n])).collect())
}

fn tensor_value(t: &Tensor3) -> Value {
    let n = t.n();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| vector_value(t.slice(i, j))).collect()))
            .collect(),
    )
}

fn mask_value(mask: &[Vec<bool>]) -> Value {
    Value::Array(
        mask.iter()
            .map(|row| Value::Array(row.iter().map(|b| Value::Bool(*b)).collect()))
            .collect(),
    )
}

fn series_value(s: &NCSeries) -> Value {
    let names = s.alphabet().names();
    let terms: Vec<Value> = s
        .terms()
        .map(|(m, c)| {
            let word: Vec<Value> = m
                .letters()
                .iter()
                .map(|l| Value::String(names[*l as usize].clone()))
                .collect();
            json!({ "coeff": format_scalar(c), "word": word })
        })
        .collect();
    json!({
        "alphabet": names,
        "terms": terms,
        "truncation": s.truncation(),
    })
}

fn payload_value(doc: &Document) -> Value {
    match doc {
        Document::Hopf { data, .. } => json!({
            "antipode": data.antipode.as_ref().map(|s| matrix_value(data.dim, s)),
            "basis": data.basis,
            "comult": tensor_value(&data.comult),
            "counit": vector_value(&data.counit),
            "mult": tensor_value(&data.mult),
            "unit": vector_value(&data.unit),
        }),
        Document::Trialgebra { data, .. } => json!({
            "basis": data.basis,
            "comult": tensor_value(&data.comult),
            "counit": vector_value(&data.counit),
            "dot_mult": tensor_value(&data.dot_mult),
            "star_mask": mask_value(&data.star_mask),
            "star_mult": tensor_value(&data.star_mult),
        }),
        Document::Quadraalgebra { data, .. } => json!({
            "basis": data.basis,
            "comult1": tensor_value(&data.comult1),
            "comult2": tensor_value(&data.comult2),
            "counit1": vector_value(&data.counit1),
            "counit2": vector_value(&data.counit2),
            "mult1": tensor_value(&data.mult1),
            "mult2": tensor_value(&data.mult2),
        }),
        Document::LieMetrized { data, .. } => json!({
            "basis": data.basis(),
            "bracket": tensor_value(data.bracket_tensor()),
            "metric": matrix_value(data.dim(), data.metric()),
        }),
        Document::Series { data, .. } => series_value(data),
        Document::Braid { data, .. } => json!({
            "strands": 3,
            "word": data.tokens(),
        }),
        Document::GT { data, .. } => json!({
            "f": series_value(&data.f),
            "lambda": format_scalar(&data.lambda),
        }),
        Document::HGT { data, .. } => json!({
            "f": series_value(&data.f),
            "g": series_value(&data.g),
        }),
    }
}

/// Deterministic text form; ends with a newline.
pub fn print(doc: &Document) -> String {
    let mut top = Map::new();
    top.insert("format".to_string(), json!(1));
    top.insert("kind".to_string(), Value::String(doc.kind().to_string()));
    if let Some(n) = doc.name() {
        top.insert("name".to_string(), Value::String(n.to_string()));
    }
    top.insert("payload".to_string(), payload_value(doc));
    let mut text = serde_json::to_string_pretty(&Value::Object(top)).expect("valid json tree");
    text.push('\n');
    text
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| semantic(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| semantic(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, IoError> {
    v.as_str().ok_or_else(|| semantic(path, "expected a string"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, IoError> {
    m.get(key).ok_or_else(|| semantic(path, format!("missing field `{key}`")))
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), IoError> {
    for k in m.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(semantic(path, format!("unknown field `{k}`")));
        }
    }
    Ok(())
}

fn scalar_at(v: &Value, path: &str) -> Result<Scalar, IoError> {
    let s = v.as_str().ok_or_else(|| semantic(path, "expected a scalar string"))?;
    parse_scalar(s).map_err(|e| semantic(path, e.to_string()))
}

fn scalar_vec(v: &Value, n: usize, path: &str) -> Result<Vec<Scalar>, IoError> {
    let arr = as_array(v, path)?;
    if arr.len() != n {
        return Err(semantic(path, format!("expected {n} entries, got {}", arr.len())));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| scalar_at(x, &format!("{path}[{i}]")))
        .collect()
}

fn scalar_matrix(v: &Value, n: usize, path: &str) -> Result<Vec<Scalar>, IoError> {
    let rows = as_array(v, path)?;
    if rows.len() != n {
        return Err(semantic(path, format!("expected {n} rows, got {}", rows.len())));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        flat.extend(scalar_vec(row, n, &format!("{path}[{r}]"))?);
    }
    Ok(flat)
}

fn tensor_at(v: &Value, n: usize, path: &str) -> Result<Tensor3, IoError> {
    let planes = as_array(v, path)?;
    if planes.len() != n {
        return Err(semantic(path, format!("expected {n} planes, got {}", planes.len())));
    }
    let mut flat = Vec::with_capacity(n * n * n);
    for (i, plane) in planes.iter().enumerate() {
        flat.extend(scalar_matrix(plane, n, &format!("{path}[{i}]"))?);
    }
    Tensor3::from_data(n, flat).map_err(|e| semantic(path, e.to_string()))
}

fn mask_at(v: &Value, n: usize, path: &str) -> Result<Vec<Vec<bool>>, IoError> {
    let rows = as_array(v, path)?;
    if rows.len() != n {
        return Err(semantic(path, format!("expected {n} rows, got {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{r}]");
        let cells = as_array(row, &row_path)?;
        if cells.len() != n {
            return Err(semantic(&row_path, format!("expected {n} entries, got {}", cells.len())));
        }
        let mut bools = Vec::with_capacity(n);
        for (c, cell) in cells.iter().enumerate() {
            bools.push(
                cell.as_bool()
                    .ok_or_else(|| semantic(&format!("{row_path}[{c}]"), "expected a boolean"))?,
            );
        }
        out.push(bools);
    }
    Ok(out)
}

fn labels_at(v: &Value, path: &str) -> Result<Vec<String>, IoError> {
    let arr = as_array(v, path)?;
    if arr.is_empty() {
        return Err(semantic(path, "basis must not be empty"));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| Ok(as_str(x, &format!("{path}[{i}]"))?.to_string()))
        .collect()
}

fn u32_at(v: &Value, path: &str) -> Result<u32, IoError> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| semantic(path, "expected a small nonnegative integer"))
}

fn series_at(v: &Value, path: &str) -> Result<NCSeries, IoError> {
    let m = as_object(v, path)?;
    check_keys(m, &["alphabet", "terms", "truncation"], path)?;
    let names = labels_at(field(m, "alphabet", path)?, &format!("{path}.alphabet"))?;
    let alphabet = Alphabet::new(names.clone());
    let truncation = u32_at(field(m, "truncation", path)?, &format!("{path}.truncation"))?;
    let terms_path = format!("{path}.terms");
    let terms = as_array(field(m, "terms", path)?, &terms_path)?;
    let mut series = NCSeries::zero(&alphabet, truncation);
    for (i, term) in terms.iter().enumerate() {
        let term_path = format!("{terms_path}[{i}]");
        let tm = as_object(term, &term_path)?;
        check_keys(tm, &["coeff", "word"], &term_path)?;
        let coeff = scalar_at(field(tm, "coeff", &term_path)?, &format!("{term_path}.coeff"))?;
        if coeff.is_zero() {
            return Err(semantic(&format!("{term_path}.coeff"), "zero terms are not stored"));
        }
        let word_path = format!("{term_path}.word");
        let word = as_array(field(tm, "word", &term_path)?, &word_path)?;
        let mut letters = Vec::with_capacity(word.len());
        for (j, w) in word.iter().enumerate() {
            let letter_path = format!("{word_path}[{j}]");
            let name = as_str(w, &letter_path)?;
            let index = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| semantic(&letter_path, format!("unknown generator `{name}`")))?;
            letters.push(index as u8);
        }
        let mono = Monomial::new(&alphabet, letters);
        if mono.degree() > truncation {
            return Err(semantic(&word_path, "term degree exceeds the truncation"));
        }
        if !series.coeff(&mono).is_zero() {
            return Err(semantic(&word_path, "duplicate monomial"));
        }
        series.add_term(mono, coeff);
    }
    Ok(series)
}

fn antipode_at(v: &Value, n: usize, path: &str) -> Result<Option<Vec<Scalar>>, IoError> {
    if v.is_null() {
        return Ok(None);
    }
    Ok(Some(scalar_matrix(v, n, path)?))
}

fn payload_at(kind: &str, v: &Value, name: Option<String>) -> Result<Document, IoError> {
    let path = "payload";
    match kind {
        "hopf" => {
            let m = as_object(v, path)?;
            check_keys(m, &["antipode", "basis", "comult", "counit", "mult", "unit"], path)?;
            let basis = labels_at(field(m, "basis", path)?, "payload.basis")?;
            let n = basis.len();
            let data = HopfData::new(
                basis,
                tensor_at(field(m, "mult", path)?, n, "payload.mult")?,
                scalar_vec(field(m, "unit", path)?, n, "payload.unit")?,
                tensor_at(field(m, "comult", path)?, n, "payload.comult")?,
                scalar_vec(field(m, "counit", path)?, n, "payload.counit")?,
                antipode_at(field(m, "antipode", path)?, n, "payload.antipode")?,
            )
            .map_err(|e| semantic(path, e.to_string()))?;
            Ok(Document::Hopf { name, data })
        }
        "trialgebra" => {
            let m = as_object(v, path)?;
            check_keys(
                m,
                &["basis", "comult", "counit", "dot_mult", "star_mask", "star_mult"],
                path,
            )?;
            let basis = labels_at(field(m, "basis", path)?, "payload.basis")?;
            let n = basis.len();
            let data = TrialgebraData::new(
                basis,
                tensor_at(field(m, "star_mult", path)?, n, "payload.star_mult")?,
                mask_at(field(m, "star_mask", path)?, n, "payload.star_mask")?,
                tensor_at(field(m, "dot_mult", path)?, n, "payload.dot_mult")?,
                tensor_at(field(m, "comult", path)?, n, "payload.comult")?,
                scalar_vec(field(m, "counit", path)?, n, "payload.counit")?,
            )
            .map_err(|e| semantic(path, e.to_string()))?;
            Ok(Document::Trialgebra { name, data })
        }
        "quadraalgebra" => {
            let m = as_object(v, path)?;
            check_keys(
                m,
                &["basis", "comult1", "comult2", "counit1", "counit2", "mult1", "mult2"],
                path,
            )?;
            let basis = labels_at(field(m, "basis", path)?, "payload.basis")?;
            let n = basis.len();
            let data = QuadraalgebraData::new(
                basis,
                tensor_at(field(m, "mult1", path)?, n, "payload.mult1")?,
                tensor_at(field(m, "mult2", path)?, n, "payload.mult2")?,
                tensor_at(field(m, "comult1", path)?, n, "payload.comult1")?,
                tensor_at(field(m, "comult2", path)?, n, "payload.comult2")?,
                scalar_vec(field(m, "counit1", path)?, n, "payload.counit1")?,
                scalar_vec(field(m, "counit2", path)?, n, "payload.counit2")?,
            )
            .map_err(|e| semantic(path, e.to_string()))?;
            Ok(Document::Quadraalgebra { name, data })
        }
        "lie-metrized" => {
            let m = as_object(v, path)?;
            check_keys(m, &["basis", "bracket", "metric"], path)?;
            let basis = labels_at(field(m, "basis", path)?, "payload.basis")?;
            let n = basis.len();
            let data = MetrizedLieAlgebra::new(
                basis,
                tensor_at(field(m, "bracket", path)?, n, "payload.bracket")?,
                scalar_matrix(field(m, "metric", path)?, n, "payload.metric")?,
            )
            .map_err(|e| semantic(path, e.to_string()))?;
            Ok(Document::LieMetrized { name, data })
        }
        "series" => Ok(Document::Series { name, data: series_at(v, path)? }),
        "braid" => {
            let m = as_object(v, path)?;
            check_keys(m, &["strands", "word"], path)?;
            let strands = u32_at(field(m, "strands", path)?, "payload.strands")?;
            if strands != 3 {
                return Err(semantic("payload.strands", "only three strands are supported"));
            }
            let word = as_str(field(m, "word", path)?, "payload.word")?;
            let data = BraidWord::parse(word).map_err(|e| semantic("payload.word", e))?;
            Ok(Document::Braid { name, data })
        }
        "gt-element" => {
            let m = as_object(v, path)?;
            check_keys(m, &["f", "lambda"], path)?;
            let lambda = scalar_at(field(m, "lambda", path)?, "payload.lambda")?;
            let f = series_at(field(m, "f", path)?, "payload.f")?;
            let data = GTElement::new(lambda, f).map_err(|e| semantic("payload.f", e.to_string()))?;
            Ok(Document::GT { name, data })
        }
        "hgt-pair" => {
            let m = as_object(v, path)?;
            check_keys(m, &["f", "g"], path)?;
            let f = series_at(field(m, "f", path)?, "payload.f")?;
            let g = series_at(field(m, "g", path)?, "payload.g")?;
            let data = HGTPair::new(f, g).map_err(|e| semantic(path, e.to_string()))?;
            Ok(Document::HGT { name, data })
        }
        other => Err(semantic("kind", format!("unknown kind `{other}`"))),
    }
}

/// Strict parse; every semantic complaint names the offending field path.
pub fn parse(text: &str) -> Result<Document, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let top = as_object(&value, "document")?;
    check_keys(top, &["format", "kind", "name", "payload"], "document")?;
    let format = u32_at(field(top, "format", "document")?, "format")?;
    if format != 1 {
        return Err(semantic("format", format!("unsupported format version {format}")));
    }
    let kind = as_str(field(top, "kind", "document")?, "kind")?;
    let name = match top.get("name") {
        None => None,
        Some(v) => Some(as_str(v, "name")?.to_string()),
    };
    payload_at(kind, field(top, "payload", "document")?, name)
}
