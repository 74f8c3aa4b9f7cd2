//! Typed hybrid information systems: schema parsing, CSV ingestion and the
//! crisp partition induced by the decision column.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Read;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::fuzzy::{TermTable, TrapezoidalFuzzyNumber};
use crate::{Error, Result};

pub const DEFAULT_TRUE_TOKEN: &str = "Yes";
pub const DEFAULT_FALSE_TOKEN: &str = "No";
pub const DEFAULT_SET_DELIMITER: &str = ";";

/// Kind of an attribute without its configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KindTag {
    Boolean,
    Categorical,
    Real,
    Set,
    Linguistic,
}

impl fmt::Display for KindTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KindTag::Boolean => "boolean",
            KindTag::Categorical => "categorical",
            KindTag::Real => "real",
            KindTag::Set => "set",
            KindTag::Linguistic => "linguistic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttributeKind {
    Boolean {
        true_token: String,
        false_token: String,
    },
    Categorical,
    Real,
    /// `domain` is `None` in a schema that does not declare one; a loaded
    /// system always carries the declared or inferred domain.
    Set {
        delimiter: String,
        domain: Option<BTreeSet<String>>,
    },
    Linguistic(TermTable),
}

impl AttributeKind {
    pub fn tag(&self) -> KindTag {
        match self {
            AttributeKind::Boolean { .. } => KindTag::Boolean,
            AttributeKind::Categorical => KindTag::Categorical,
            AttributeKind::Real => KindTag::Real,
            AttributeKind::Set { .. } => KindTag::Set,
            AttributeKind::Linguistic(_) => KindTag::Linguistic,
        }
    }

    pub fn boolean() -> Self {
        AttributeKind::Boolean {
            true_token: DEFAULT_TRUE_TOKEN.into(),
            false_token: DEFAULT_FALSE_TOKEN.into(),
        }
    }

    pub fn set() -> Self {
        AttributeKind::Set {
            delimiter: DEFAULT_SET_DELIMITER.into(),
            domain: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    pub name: String,
    pub kind: AttributeKind,
}

impl Attribute {
    pub fn new(name: impl Into<String>, kind: AttributeKind) -> Self {
        Self {
            name: name.into(),
            kind,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttributeValue {
    Boolean(bool),
    Categorical(String),
    Real(f64),
    Set(BTreeSet<String>),
    Linguistic(String),
}

impl AttributeValue {
    pub fn tag(&self) -> KindTag {
        match self {
            AttributeValue::Boolean(_) => KindTag::Boolean,
            AttributeValue::Categorical(_) => KindTag::Categorical,
            AttributeValue::Real(_) => KindTag::Real,
            AttributeValue::Set(_) => KindTag::Set,
            AttributeValue::Linguistic(_) => KindTag::Linguistic,
        }
    }

    pub fn set<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        AttributeValue::Set(items.into_iter().map(Into::into).collect())
    }
}

/// Ordered attribute descriptors plus the decision column name.
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    pub attributes: Vec<Attribute>,
    pub decision: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemaDoc {
    attributes: Vec<AttributeDoc>,
    decision: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttributeDoc {
    name: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    true_token: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    false_token: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    set_delimiter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<IndexMap<String, [f64; 4]>>,
}

/// Parses the JSON schema document.
pub fn parse_schema(document: &str) -> Result<Schema> {
    let doc: SchemaDoc = serde_json::from_str(document)
        .map_err(|e| Error::Schema(format!("malformed document: {e}")))?;
    Schema::from_doc(doc)
}

impl Schema {
    fn from_doc(doc: SchemaDoc) -> Result<Self> {
        if doc.attributes.is_empty() {
            return Err(Error::Schema("at least one attribute is required".into()));
        }
        let mut seen = BTreeSet::new();
        let mut attributes = Vec::with_capacity(doc.attributes.len());
        for a in doc.attributes {
            if a.name.is_empty() {
                return Err(Error::Schema("attribute with empty name".into()));
            }
            if !seen.insert(a.name.clone()) {
                return Err(Error::Schema(format!("duplicate attribute `{}`", a.name)));
            }
            let kind = match a.kind.as_str() {
                "boolean" => {
                    let true_token = a.true_token.unwrap_or_else(|| DEFAULT_TRUE_TOKEN.into());
                    let false_token = a.false_token.unwrap_or_else(|| DEFAULT_FALSE_TOKEN.into());
                    if true_token == false_token {
                        return Err(Error::Schema(format!(
                            "attribute `{}`: true and false tokens are both `{true_token}`",
                            a.name
                        )));
                    }
                    AttributeKind::Boolean {
                        true_token,
                        false_token,
                    }
                }
                "categorical" => AttributeKind::Categorical,
                "real" => AttributeKind::Real,
                "set" => {
                    let delimiter = a
                        .set_delimiter
                        .unwrap_or_else(|| DEFAULT_SET_DELIMITER.into());
                    if delimiter.is_empty() || delimiter == "," {
                        return Err(Error::Schema(format!(
                            "attribute `{}`: set delimiter must be non-empty and differ from ','",
                            a.name
                        )));
                    }
                    AttributeKind::Set {
                        delimiter,
                        domain: a.domain.map(|d| d.into_iter().collect()),
                    }
                }
                "linguistic" => {
                    let terms = a.terms.filter(|t| !t.is_empty()).ok_or_else(|| {
                        Error::Schema(format!(
                            "attribute `{}`: linguistic kind needs terms",
                            a.name
                        ))
                    })?;
                    let terms = terms
                        .into_iter()
                        .map(|(label, [p, q, r, s])| {
                            TrapezoidalFuzzyNumber::new(p, q, r, s)
                                .map(|t| (label, t))
                                .map_err(|e| Error::Schema(format!("attribute `{}`: {e}", a.name)))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    AttributeKind::Linguistic(TermTable::new(terms)?)
                }
                other => {
                    return Err(Error::Schema(format!(
                        "attribute `{}`: unknown kind `{other}`",
                        a.name
                    )))
                }
            };
            attributes.push(Attribute { name: a.name, kind });
        }
        if doc.decision.is_empty() {
            return Err(Error::Schema("decision column name is empty".into()));
        }
        if seen.contains(&doc.decision) {
            return Err(Error::Schema(format!(
                "decision column `{}` is also declared as an attribute",
                doc.decision
            )));
        }
        Ok(Self {
            attributes,
            decision: doc.decision,
        })
    }

    fn to_doc(&self) -> SchemaDoc {
        let attributes = self
            .attributes
            .iter()
            .map(|a| {
                let mut doc = AttributeDoc {
                    name: a.name.clone(),
                    kind: a.kind.tag().to_string(),
                    true_token: None,
                    false_token: None,
                    set_delimiter: None,
                    domain: None,
                    terms: None,
                };
                match &a.kind {
                    AttributeKind::Boolean {
                        true_token,
                        false_token,
                    } => {
                        doc.true_token = Some(true_token.clone());
                        doc.false_token = Some(false_token.clone());
                    }
                    AttributeKind::Set { delimiter, domain } => {
                        doc.set_delimiter = Some(delimiter.clone());
                        doc.domain = domain.as_ref().map(|d| d.iter().cloned().collect());
                    }
                    AttributeKind::Linguistic(table) => {
                        doc.terms = Some(
                            table
                                .iter()
                                .map(|(label, t)| (label.to_string(), t.points()))
                                .collect(),
                        );
                    }
                    AttributeKind::Categorical | AttributeKind::Real => {}
                }
                doc
            })
            .collect();
        SchemaDoc {
            attributes,
            decision: self.decision.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("schema serializes")
    }
}

/// `<U, A ∪ {d}, V>`: n objects described by m typed attributes and a
/// decision label. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridInformationSystem {
    attributes: Vec<Attribute>,
    decision_name: String,
    objects: Vec<Vec<AttributeValue>>,
    decision: Vec<String>,
    partition: DecisionPartition,
}

impl HybridInformationSystem {
    /// Validates and assembles a system. Set attributes without a declared
    /// domain get the union of their observed values.
    pub fn new(
        mut attributes: Vec<Attribute>,
        decision_name: impl Into<String>,
        objects: Vec<Vec<AttributeValue>>,
        decision: Vec<String>,
    ) -> Result<Self> {
        let m = attributes.len();
        let n = objects.len();
        if m == 0 {
            return Err(Error::Dataset("at least one attribute is required".into()));
        }
        if n < 2 {
            return Err(Error::Dataset(format!("need at least 2 objects, got {n}")));
        }
        if decision.len() != n {
            return Err(Error::Dataset(format!(
                "{} decision labels for {n} objects",
                decision.len()
            )));
        }
        for (i, row) in objects.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Dataset(format!(
                    "object {} has {} values, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
        }
        for (k, attr) in attributes.iter_mut().enumerate() {
            let cell_err = |i: usize, message: String| Error::Cell {
                row: i + 1,
                column: attr.name.clone(),
                message,
            };
            let tag = attr.kind.tag();
            for (i, row) in objects.iter().enumerate() {
                if row[k].tag() != tag {
                    return Err(cell_err(
                        i,
                        format!("value of kind {} in a {tag} column", row[k].tag()),
                    ));
                }
            }
            match &mut attr.kind {
                AttributeKind::Real => {
                    for (i, row) in objects.iter().enumerate() {
                        if let AttributeValue::Real(v) = row[k] {
                            if !v.is_finite() {
                                return Err(cell_err(i, format!("non-finite real `{v}`")));
                            }
                        }
                    }
                }
                AttributeKind::Linguistic(table) => {
                    for (i, row) in objects.iter().enumerate() {
                        if let AttributeValue::Linguistic(label) = &row[k] {
                            if !table.contains(label) {
                                return Err(cell_err(
                                    i,
                                    format!("unknown linguistic term `{label}`"),
                                ));
                            }
                        }
                    }
                }
                AttributeKind::Set { domain, .. } => {
                    let observed: BTreeSet<String> = objects
                        .iter()
                        .flat_map(|row| match &row[k] {
                            AttributeValue::Set(s) => s.iter().cloned().collect::<Vec<_>>(),
                            _ => unreachable!("tag checked above"),
                        })
                        .collect();
                    for (i, row) in objects.iter().enumerate() {
                        if let AttributeValue::Set(s) = &row[k] {
                            if s.is_empty() {
                                return Err(cell_err(i, "empty set value".into()));
                            }
                            if let Some(declared) = domain.as_ref() {
                                if let Some(bad) = s.iter().find(|e| !declared.contains(*e)) {
                                    return Err(cell_err(
                                        i,
                                        format!(
                                            "set element `{bad}` is outside the declared domain"
                                        ),
                                    ));
                                }
                            }
                        }
                    }
                    if domain.is_none() {
                        *domain = Some(observed);
                    }
                }
                AttributeKind::Boolean { .. } | AttributeKind::Categorical => {}
            }
        }
        let partition = DecisionPartition::from_labels(&decision);
        Ok(Self {
            attributes,
            decision_name: decision_name.into(),
            objects,
            decision,
            partition,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn decision_name(&self) -> &str {
        &self.decision_name
    }

    pub fn object(&self, i: usize) -> &[AttributeValue] {
        &self.objects[i]
    }

    pub fn value(&self, i: usize, k: usize) -> &AttributeValue {
        &self.objects[i][k]
    }

    pub fn labels(&self) -> &[String] {
        &self.decision
    }

    pub fn partition(&self) -> &DecisionPartition {
        &self.partition
    }

    /// Schema describing this system, with set domains made explicit.
    pub fn schema(&self) -> Schema {
        Schema {
            attributes: self.attributes.clone(),
            decision: self.decision_name.clone(),
        }
    }

    /// Serializes the table as CSV in the same layout `load_dataset` reads.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<&str> = self
            .attributes
            .iter()
            .map(|a| a.name.as_str())
            .chain(std::iter::once(self.decision_name.as_str()))
            .collect();
        w.write_record(&header)?;
        for (row, label) in self.objects.iter().zip(&self.decision) {
            let mut record: Vec<String> = row
                .iter()
                .zip(&self.attributes)
                .map(|(v, a)| format_cell(v, &a.kind))
                .collect();
            record.push(label.clone());
            w.write_record(&record)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn format_cell(value: &AttributeValue, kind: &AttributeKind) -> String {
    match (value, kind) {
        (
            AttributeValue::Boolean(b),
            AttributeKind::Boolean {
                true_token,
                false_token,
            },
        ) => if *b { true_token } else { false_token }.clone(),
        (AttributeValue::Categorical(s), _) | (AttributeValue::Linguistic(s), _) => s.clone(),
        (AttributeValue::Real(v), _) => format!("{v:?}"),
        (AttributeValue::Set(s), AttributeKind::Set { delimiter, .. }) => s
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(delimiter),
        _ => unreachable!("value tags are validated against their column"),
    }
}

fn parse_cell(raw: &str, kind: &AttributeKind) -> std::result::Result<AttributeValue, String> {
    if raw.is_empty() {
        return Err("missing value".into());
    }
    match kind {
        AttributeKind::Boolean {
            true_token,
            false_token,
        } => {
            if raw == true_token {
                Ok(AttributeValue::Boolean(true))
            } else if raw == false_token {
                Ok(AttributeValue::Boolean(false))
            } else {
                Err(format!(
                    "`{raw}` is neither `{true_token}` nor `{false_token}`"
                ))
            }
        }
        AttributeKind::Categorical => Ok(AttributeValue::Categorical(raw.to_string())),
        AttributeKind::Real => match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(AttributeValue::Real(v)),
            _ => Err(format!("`{raw}` is not a finite real number")),
        },
        AttributeKind::Set { delimiter, domain } => {
            let items: BTreeSet<String> = raw
                .split(delimiter.as_str())
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            if items.is_empty() {
                return Err("missing value".into());
            }
            if let Some(domain) = domain {
                if let Some(bad) = items.iter().find(|e| !domain.contains(*e)) {
                    return Err(format!(
                        "set element `{bad}` is outside the declared domain"
                    ));
                }
            }
            Ok(AttributeValue::Set(items))
        }
        AttributeKind::Linguistic(table) => {
            if table.contains(raw) {
                Ok(AttributeValue::Linguistic(raw.to_string()))
            } else {
                Err(format!("unknown linguistic term `{raw}`"))
            }
        }
    }
}

/// Reads a comma-delimited CSV with a header row. Columns are matched to the
/// schema by name; every schema attribute and the decision column must be
/// present and no other column may appear.
pub fn load_dataset<R: Read>(rows: R, schema: &Schema) -> Result<HybridInformationSystem> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(rows);
    let header = reader.headers()?.clone();
    let mut position: HashMap<&str, usize> = HashMap::new();
    for (idx, name) in header.iter().enumerate() {
        if position.insert(name, idx).is_some() {
            return Err(Error::Dataset(format!(
                "duplicate column `{name}` in header"
            )));
        }
    }
    let columns: Vec<usize> = schema
        .attributes
        .iter()
        .map(|a| {
            position.get(a.name.as_str()).copied().ok_or_else(|| {
                Error::Dataset(format!("column `{}` is missing from the header", a.name))
            })
        })
        .collect::<Result<_>>()?;
    let decision_col = *position.get(schema.decision.as_str()).ok_or_else(|| {
        Error::Dataset(format!(
            "decision column `{}` is missing from the header",
            schema.decision
        ))
    })?;
    if header.len() != schema.attributes.len() + 1 {
        let known: BTreeSet<&str> = schema
            .attributes
            .iter()
            .map(|a| a.name.as_str())
            .chain(std::iter::once(schema.decision.as_str()))
            .collect();
        let extra: Vec<&str> = header.iter().filter(|h| !known.contains(h)).collect();
        return Err(Error::Dataset(format!("unexpected columns {extra:?}")));
    }

    let mut objects = Vec::new();
    let mut decision = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        let row = r + 1;
        let cell = |idx: usize| record.get(idx).unwrap_or("");
        let values = schema
            .attributes
            .iter()
            .zip(&columns)
            .map(|(attr, &idx)| {
                parse_cell(cell(idx), &attr.kind).map_err(|message| Error::Cell {
                    row,
                    column: attr.name.clone(),
                    message,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let label = cell(decision_col);
        if label.is_empty() {
            return Err(Error::Cell {
                row,
                column: schema.decision.clone(),
                message: "missing value".into(),
            });
        }
        objects.push(values);
        decision.push(label.to_string());
    }
    HybridInformationSystem::new(
        schema.attributes.clone(),
        schema.decision.clone(),
        objects,
        decision,
    )
}

/// `U/D`: classes in order of first appearance of their label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionPartition {
    labels: Vec<String>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl DecisionPartition {
    pub fn from_labels<S: AsRef<str>>(decision: &[S]) -> Self {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(decision.len());
        for (i, label) in decision.iter().enumerate() {
            let label = label.as_ref();
            let j = *index.entry(label).or_insert_with(|| {
                labels.push(label.to_string());
                classes.push(Vec::new());
                labels.len() - 1
            });
            classes[j].push(i);
            class_of.push(j);
        }
        Self {
            labels,
            classes,
            class_of,
        }
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn n_objects(&self) -> usize {
        self.class_of.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Crisp membership `D_j(x)`.
    pub fn membership(&self, j: usize, x: usize) -> f64 {
        if self.class_of[x] == j {
            1.0
        } else {
            0.0
        }
    }
}

pub fn partition_by_decision(his: &HybridInformationSystem) -> DecisionPartition {
    his.partition().clone()
}

/// Unordered pairs `(i, j)`, `i < j`, whose objects lie in different
/// classes, in lexicographic order.
pub fn cross_class_pairs(partition: &DecisionPartition) -> Vec<(usize, usize)> {
    let n = partition.n_objects();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| partition.class_of(i) != partition.class_of(j))
        .collect()
}
