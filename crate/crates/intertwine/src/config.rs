//! JSON run configurations: groups and subgroups, Temperley-Lieb data, ergodic
//! actions, functor pairs, corpora and suite selection.
//!
//! Scalars are `[re, im]` pairs, plain numbers, or strings in a small
//! expression language (`"1/2"`, `"-sqrt(3)/2"`, `"1/2 + i/2"`); matrices are
//! row-major arrays of rows.  Everything is parsed exactly and lowered to the
//! scalar type of the run.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::builtin::{builtin_group, builtin_pair};
use crate::ergodic::{weyl_pair, ErgodicAction, InducedSystem};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::matrix::Matrix;
use crate::rep::{float_irreps, linear_characters, lower_matrix, Rep};
use crate::scalar::Scalar;
use crate::suites::PairSetting;
use crate::surd::Surd;
use crate::tl::TlVariant;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    #[default]
    Exact,
    F64,
    F32,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::F64 => "f64",
            ScalarMode::F32 => "f32",
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub scalar: ScalarMode,
    /// Tolerance for floating runs.
    pub eps: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub groups: Vec<GroupDef>,
    #[serde(default)]
    pub subgroups: Vec<SubgroupDef>,
    #[serde(default)]
    pub tl: Vec<TlDef>,
    #[serde(default)]
    pub actions: Vec<ActionDef>,
    /// Functor pairs `(tau, mu)`: forgetful on `Rep(G)` and restriction to a subgroup.
    #[serde(default)]
    pub pairs: Vec<PairDef>,
    #[serde(default)]
    pub corpus: CorpusDef,
    #[serde(default)]
    pub induced: Vec<InducedDef>,
    #[serde(default)]
    pub classify: Vec<ClassifyDef>,
    pub su2: Option<Su2Def>,
    pub output: Option<OutputDef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDef {
    pub id: String,
    pub builtin: Option<String>,
    /// Multiplication table with element 0 the identity.
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub irreps: Vec<IrrepDef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepDef {
    pub name: String,
    /// Generating elements, by index or label.
    pub generators: Vec<Value>,
    pub images: Vec<Value>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDef {
    pub id: String,
    pub parent: String,
    pub builtin: Option<String>,
    pub elements: Option<Vec<Value>>,
    #[serde(default)]
    pub irreps: Vec<IrrepDef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TlDef {
    pub id: String,
    pub variant: TlVariant,
    pub d: Value,
    pub f: Option<Value>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDef {
    pub id: String,
    /// A group or subgroup id.
    pub group: String,
    #[serde(default)]
    pub generators: Vec<Value>,
    #[serde(default)]
    pub images: Vec<Value>,
    /// Shift and clock of this size as the images of the two generators.
    pub weyl: Option<usize>,
    /// `Ad` of the named irreducible.
    pub adjoint_of: Option<String>,
    /// Expected cocycle table `c(g, h)`, checked when given.
    pub cocycle: Option<Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDef {
    pub id: String,
    pub subgroup: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CorpusDef {
    /// Objects as letter words, `"triv"` the unit.
    pub objects: Vec<String>,
    /// Objects whose hom spaces feed the arrow sampler.
    pub arrow_objects: Vec<String>,
    pub arrows: usize,
    pub elements: usize,
    pub letters: Vec<String>,
    pub max_len: usize,
    pub products: Vec<(String, String)>,
    pub sequences: Vec<Vec<String>>,
}

impl Default for CorpusDef {
    fn default() -> Self {
        CorpusDef {
            objects: vec!["triv".into()],
            arrow_objects: Vec::new(),
            arrows: 20,
            elements: 10,
            letters: Vec::new(),
            max_len: 2,
            products: Vec::new(),
            sequences: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InducedDef {
    pub id: String,
    pub subgroup: String,
    pub action: String,
    #[serde(default)]
    pub tensor_with: Vec<String>,
    #[serde(default)]
    pub coeffs: Vec<Value>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyDef {
    pub action: String,
    pub v: String,
    #[serde(default = "default_bound")]
    pub bound: usize,
}

fn default_bound() -> usize {
    16
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Su2Def {
    pub r: Vec<u32>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputDef {
    pub dir: Option<String>,
    pub format: Option<String>,
}

fn cfg(field: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Config(field.into(), msg.into())
}

impl RunConfig {
    pub fn from_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| cfg(format!("line {} column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| cfg(path.display().to_string(), e.to_string()))?;
        Self::from_str(&text).map_err(|e| match e {
            Error::Config(f, m) => cfg(format!("{}: {f}", path.display()), m),
            other => other,
        })
    }

    /// Every id referenced is defined.
    pub fn validate(&self) -> Result<()> {
        let groups: Vec<&str> = self.groups.iter().map(|g| g.id.as_str()).collect();
        let subs: Vec<&str> = self.subgroups.iter().map(|g| g.id.as_str()).collect();
        let acts: Vec<&str> = self.actions.iter().map(|a| a.id.as_str()).collect();
        for (i, s) in self.subgroups.iter().enumerate() {
            if !groups.contains(&s.parent.as_str()) {
                return Err(cfg(format!("subgroups[{i}].parent"), format!("unknown group {}", s.parent)));
            }
        }
        for (i, a) in self.actions.iter().enumerate() {
            if !groups.contains(&a.group.as_str()) && !subs.contains(&a.group.as_str()) {
                return Err(cfg(format!("actions[{i}].group"), format!("unknown group {}", a.group)));
            }
        }
        for (i, p) in self.pairs.iter().enumerate() {
            if !subs.contains(&p.subgroup.as_str()) {
                return Err(cfg(format!("pairs[{i}].subgroup"), format!("unknown subgroup {}", p.subgroup)));
            }
        }
        for (i, d) in self.induced.iter().enumerate() {
            if !subs.contains(&d.subgroup.as_str()) {
                return Err(cfg(format!("induced[{i}].subgroup"), format!("unknown subgroup {}", d.subgroup)));
            }
            if !acts.contains(&d.action.as_str()) {
                return Err(cfg(format!("induced[{i}].action"), format!("unknown action {}", d.action)));
            }
        }
        for (i, c) in self.classify.iter().enumerate() {
            if !acts.contains(&c.action.as_str()) {
                return Err(cfg(format!("classify[{i}].action"), format!("unknown action {}", c.action)));
            }
        }
        for (i, s) in self.suites.iter().enumerate() {
            if !crate::suites::SUITES.contains(&s.as_str()) {
                return Err(cfg(format!("suites[{i}]"), format!("unknown suite {s}")));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- scalars

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.s.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Surd, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Surd, String> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.factor()?;
            } else if self.eat(b'/') {
                let d = self.factor()?;
                if d == Surd::from_i64(0) {
                    return Err("division by zero".into());
                }
                acc = acc / d;
            } else if matches!(self.peek(), Some(b'i') | Some(b's') | Some(b'(')) {
                acc = acc * self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> std::result::Result<Surd, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err("missing )".into());
                }
                Ok(v)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Surd::i())
            }
            Some(b's') => {
                if !self.s[self.pos..].starts_with(b"sqrt(") {
                    return Err("expected sqrt(".into());
                }
                self.pos += 5;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err("missing )".into());
                }
                v.sqrt_real().ok_or_else(|| format!("no square root of {v} in the field"))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit() || *c == b'.') {
                    self.pos += 1;
                }
                decimal(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
            }
            other => Err(format!("unexpected {:?}", other.map(|c| c as char))),
        }
    }
}

fn decimal(text: &str) -> std::result::Result<Surd, String> {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits = format!("{int}{frac}");
    let n: i64 = digits.parse().map_err(|_| format!("bad number {text}"))?;
    let d = 10i64.checked_pow(frac.len() as u32).ok_or_else(|| format!("too many digits in {text}"))?;
    Ok(Surd::from_ratio(n, d))
}

/// Parse one real or complex entry exactly.
pub fn parse_scalar(v: &Value, field: &str) -> Result<Surd> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Surd::from_i64(i))
            } else {
                decimal(&n.to_string()).map_err(|m| cfg(field, m))
            }
        }
        Value::String(s) => {
            let mut lx = Lexer { s: s.as_bytes(), pos: 0 };
            let v = lx.expr().map_err(|m| cfg(field, format!("{s:?}: {m}")))?;
            if lx.peek().is_some() {
                return Err(cfg(field, format!("{s:?}: trailing input")));
            }
            Ok(v)
        }
        Value::Array(xs) if xs.len() == 2 => {
            let re = parse_scalar(&xs[0], &format!("{field}[0]"))?;
            let im = parse_scalar(&xs[1], &format!("{field}[1]"))?;
            Ok(re + Surd::i() * im)
        }
        _ => Err(cfg(field, "expected a number, a string or [re, im]")),
    }
}

pub fn parse_matrix(v: &Value, field: &str) -> Result<Matrix<Surd>> {
    let rows = v.as_array().ok_or_else(|| cfg(field, "expected an array of rows"))?;
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| cfg(format!("{field}[{i}]"), "expected a row"))?;
        out.push(r.iter().enumerate().map(|(j, x)| parse_scalar(x, &format!("{field}[{i}][{j}]"))).collect::<Result<Vec<_>>>()?);
    }
    if out.is_empty() || out.iter().any(|r| r.len() != out[0].len()) {
        return Err(cfg(field, "rows must be nonempty and of equal length"));
    }
    Ok(Matrix::from_rows(out))
}

fn element(g: &FiniteGroup, v: &Value, field: &str) -> Result<usize> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .map(|x| x as usize)
            .filter(|&x| x < g.order())
            .ok_or_else(|| cfg(field, format!("no element {n} in {}", g.name()))),
        Value::String(s) => (0..g.order())
            .find(|&x| g.label(x) == s)
            .ok_or_else(|| cfg(field, format!("no element labelled {s} in {}", g.name()))),
        _ => Err(cfg(field, "expected an element index or label")),
    }
}

/// Images of all elements from images of generating elements, along a breadth-first tree.
pub fn extend_images<S: Scalar>(g: &FiniteGroup, gens: &[usize], images: &[Matrix<S>]) -> Option<Vec<Matrix<S>>> {
    let n = images.first()?.rows();
    let mut out: Vec<Option<Matrix<S>>> = vec![None; g.order()];
    out[0] = Some(Matrix::identity(n));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, m) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            if out[y].is_none() {
                out[y] = Some(out[x].as_ref().expect("visited") * m);
                queue.push_back(y);
            }
        }
    }
    out.into_iter().collect()
}

// ---------------------------------------------------------------- resolution

#[derive(Clone, Debug)]
enum Irreps {
    Exact(Vec<(String, Rep<Surd>)>),
    Float(Vec<(String, Rep<Complex<f64>>)>),
}

impl Irreps {
    fn lower<S: Scalar>(&self, field: &str) -> Result<Vec<(String, Rep<S>)>> {
        match self {
            Irreps::Exact(xs) => Ok(xs.iter().map(|(n, r)| (n.clone(), r.lower::<S>())).collect()),
            Irreps::Float(xs) => xs
                .iter()
                .map(|(n, r)| r.cast::<S>().map(|r| (n.clone(), r)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| cfg(field, "irreducibles were computed in floating point; give them explicitly for exact runs")),
        }
    }
}

#[derive(Clone, Debug)]
struct GroupEntry {
    group: Arc<FiniteGroup>,
    builtin: Option<String>,
    irreps: Irreps,
}

fn explicit_irreps(g: &Arc<FiniteGroup>, defs: &[IrrepDef], field: &str, seed: u64) -> Result<Irreps> {
    if defs.is_empty() {
        return if g.is_abelian() {
            let chars = linear_characters(g)?;
            Ok(Irreps::Exact(chars.into_iter().enumerate().map(|(i, r)| (if i == 0 { "triv".into() } else { format!("chi{i}") }, r)).collect()))
        } else {
            let fl = float_irreps(g, seed)?;
            Ok(Irreps::Float(fl.into_iter().enumerate().map(|(i, r)| (if i == 0 { "triv".into() } else { format!("rho{i}") }, r)).collect()))
        };
    }
    let mut out = Vec::new();
    for (i, d) in defs.iter().enumerate() {
        let f = format!("{field}.irreps[{i}]");
        let gens = d.generators.iter().enumerate().map(|(k, v)| element(g, v, &format!("{f}.generators[{k}]"))).collect::<Result<Vec<_>>>()?;
        let imgs = d.images.iter().enumerate().map(|(k, v)| parse_matrix(v, &format!("{f}.images[{k}]"))).collect::<Result<Vec<_>>>()?;
        if gens.len() != imgs.len() {
            return Err(cfg(&f, "one image per generator"));
        }
        let mats = extend_images(g, &gens, &imgs).ok_or_else(|| cfg(&f, "generators do not generate the group"))?;
        let rep = Rep::new(g.clone(), mats).map_err(|e| cfg(&f, e.to_string()))?;
        out.push((d.name.clone(), rep));
    }
    Ok(Irreps::Exact(out))
}

/// Named ergodic action with the irreducibles of its group.
pub struct ActionEntry<S: Scalar> {
    pub id: String,
    pub action: ErgodicAction<S>,
    pub irreps: Vec<(String, Rep<S>)>,
}

pub struct TlEntry<S> {
    pub id: String,
    pub variant: TlVariant,
    pub d: S,
    pub f: Option<Matrix<S>>,
}

pub struct InducedEntry<S: Scalar> {
    pub id: String,
    pub system: InducedSystem<S>,
    pub g_irreps: Vec<(String, Rep<S>)>,
    pub tensor_with: Vec<String>,
    pub coeffs: Vec<S>,
}

pub struct ClassifyEntry {
    pub action: usize,
    pub v: String,
    pub bound: usize,
}

/// A configuration with every definition built at scalar type `S`.
pub struct Setting<S: Scalar> {
    pub seed: u64,
    pub groups: Vec<(String, Arc<FiniteGroup>, Vec<(String, Rep<S>)>)>,
    pub pairs: Vec<PairSetting<S>>,
    pub tl: Vec<TlEntry<S>>,
    pub actions: Vec<ActionEntry<S>>,
    pub induced: Vec<InducedEntry<S>>,
    pub classify: Vec<ClassifyEntry>,
    pub su2: Vec<u32>,
    pub corpus: CorpusDef,
}

impl RunConfig {
    pub fn resolve<S: Scalar>(&self) -> Result<Setting<S>> {
        self.validate()?;
        let mut groups: BTreeMap<String, GroupEntry> = BTreeMap::new();
        let mut order = Vec::new();
        for (i, d) in self.groups.iter().enumerate() {
            let f = format!("groups[{i}]");
            let entry = match (&d.builtin, &d.table) {
                (Some(b), None) => {
                    let data = builtin_group(b).map_err(|e| cfg(&f, e.to_string()))?;
                    let irreps = if d.irreps.is_empty() { Irreps::Exact(data.irreps) } else { explicit_irreps(&data.group, &d.irreps, &f, self.seed)? };
                    GroupEntry { group: data.group, builtin: Some(b.clone()), irreps }
                }
                (None, Some(t)) => {
                    let g = Arc::new(FiniteGroup::from_table(&d.id, t.clone()).map_err(|e| cfg(format!("{f}.table"), e.to_string()))?);
                    let irreps = explicit_irreps(&g, &d.irreps, &f, self.seed)?;
                    GroupEntry { group: g, builtin: None, irreps }
                }
                _ => return Err(cfg(&f, "give exactly one of builtin, table")),
            };
            order.push(d.id.clone());
            groups.insert(d.id.clone(), entry);
        }
        let mut subs: BTreeMap<String, (Subgroup, Irreps)> = BTreeMap::new();
        for (i, d) in self.subgroups.iter().enumerate() {
            let f = format!("subgroups[{i}]");
            let parent = &groups[&d.parent];
            let (sub, irreps) = match (&d.builtin, &d.elements) {
                (Some(b), None) => {
                    let pb = parent.builtin.as_ref().ok_or_else(|| cfg(&f, "builtin subgroups need a builtin parent"))?;
                    let p = builtin_pair(pb, b).map_err(|e| cfg(&f, e.to_string()))?;
                    let sub = parent.group.subgroup(b, &p.sub.embedding).map_err(|e| cfg(&f, e.to_string()))?;
                    let irreps = if d.irreps.is_empty() {
                        let moved = p
                            .k
                            .irreps
                            .iter()
                            .map(|(n, r)| Rep::new(sub.group.clone(), r.matrices().to_vec()).map(|r| (n.clone(), r)))
                            .collect::<Result<Vec<_>>>()?;
                        Irreps::Exact(moved)
                    } else {
                        explicit_irreps(&sub.group, &d.irreps, &f, self.seed)?
                    };
                    (sub, irreps)
                }
                (None, Some(els)) => {
                    let idx = els.iter().enumerate().map(|(k, v)| element(&parent.group, v, &format!("{f}.elements[{k}]"))).collect::<Result<Vec<_>>>()?;
                    let sub = parent.group.subgroup(&d.id, &idx).map_err(|e| cfg(&f, e.to_string()))?;
                    let irreps = explicit_irreps(&sub.group, &d.irreps, &f, self.seed)?;
                    (sub, irreps)
                }
                _ => return Err(cfg(&f, "give exactly one of builtin, elements")),
            };
            subs.insert(d.id.clone(), (sub, irreps));
        }

        let group_of = |id: &str, f: &str| -> Result<(Arc<FiniteGroup>, Vec<(String, Rep<S>)>)> {
            if let Some(g) = groups.get(id) {
                Ok((g.group.clone(), g.irreps.lower(f)?))
            } else {
                let (s, irr) = &subs[id];
                Ok((s.group.clone(), irr.lower(f)?))
            }
        };

        let mut pairs = Vec::new();
        for (i, p) in self.pairs.iter().enumerate() {
            let f = format!("pairs[{i}]");
            let (sub, kirr) = &subs[&p.subgroup];
            let parent_id = &self.subgroups.iter().find(|s| s.id == p.subgroup).expect("validated").parent;
            let girr = groups[parent_id].irreps.lower::<S>(&f)?;
            let label = format!("{}/{}", parent_id, p.subgroup);
            pairs.push(PairSetting::new(&label, girr, sub.clone(), kirr.lower(&f)?).map_err(|e| cfg(&f, e.to_string()))?);
        }

        let mut tl = Vec::new();
        for (i, t) in self.tl.iter().enumerate() {
            let f = format!("tl[{i}]");
            let d = S::from_surd(&parse_scalar(&t.d, &format!("{f}.d"))?);
            let fm = match &t.f {
                Some(v) => Some(lower_matrix::<S>(&parse_matrix(v, &format!("{f}.f"))?)),
                None => None,
            };
            tl.push(TlEntry { id: t.id.clone(), variant: t.variant, d, f: fm });
        }

        let mut actions = Vec::new();
        for (i, a) in self.actions.iter().enumerate() {
            let f = format!("actions[{i}]");
            let (g, irreps) = group_of(&a.group, &f)?;
            let action = if let Some(name) = &a.adjoint_of {
                let rep = irreps.iter().find(|(n, _)| n == name).ok_or_else(|| cfg(format!("{f}.adjoint_of"), format!("no irreducible {name}")))?;
                ErgodicAction::adjoint(&rep.1)
            } else {
                let gens = a.generators.iter().enumerate().map(|(k, v)| element(&g, v, &format!("{f}.generators[{k}]"))).collect::<Result<Vec<_>>>()?;
                let imgs: Vec<Matrix<S>> = match a.weyl {
                    Some(n) => {
                        let (x, z) = weyl_pair::<S>(n);
                        vec![x, z]
                    }
                    None => a
                        .images
                        .iter()
                        .enumerate()
                        .map(|(k, v)| parse_matrix(v, &format!("{f}.images[{k}]")).map(|m| lower_matrix::<S>(&m)))
                        .collect::<Result<Vec<_>>>()?,
                };
                if gens.len() != imgs.len() {
                    return Err(cfg(&f, format!("{} generators but {} images", gens.len(), imgs.len())));
                }
                let pi = extend_images(&g, &gens, &imgs).ok_or_else(|| cfg(&f, "generators do not generate the group"))?;
                ErgodicAction::new(g.clone(), pi)
            }
            .map_err(|e| cfg(&f, e.to_string()))?;
            if let Some(c) = &a.cocycle {
                let table = c
                    .iter()
                    .enumerate()
                    .map(|(x, row)| row.iter().enumerate().map(|(y, v)| parse_scalar(v, &format!("{f}.cocycle[{x}][{y}]")).map(|s| S::from_surd(&s))).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if !action.has_cocycle(&table) {
                    return Err(cfg(format!("{f}.cocycle"), "the unitaries have a different cocycle"));
                }
            }
            actions.push(ActionEntry { id: a.id.clone(), action, irreps });
        }

        let mut induced = Vec::new();
        for (i, d) in self.induced.iter().enumerate() {
            let f = format!("induced[{i}]");
            let (sub, _) = &subs[&d.subgroup];
            let act = actions.iter().find(|a| a.id == d.action).expect("validated");
            let parent_id = &self.subgroups.iter().find(|s| s.id == d.subgroup).expect("validated").parent;
            let g_irreps = groups[parent_id].irreps.lower::<S>(&f)?;
            let system = InducedSystem::new(sub.clone(), act.action.clone()).map_err(|e| cfg(&f, e.to_string()))?;
            let coeffs = d
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, v)| parse_scalar(v, &format!("{f}.coeffs[{k}]")).map(|s| S::from_surd(&s)))
                .collect::<Result<Vec<_>>>()?;
            for n in &d.tensor_with {
                if !g_irreps.iter().any(|(m, _)| m == n) {
                    return Err(cfg(format!("{f}.tensor_with"), format!("no irreducible {n}")));
                }
            }
            induced.push(InducedEntry { id: d.id.clone(), system, g_irreps, tensor_with: d.tensor_with.clone(), coeffs });
        }

        let mut classify = Vec::new();
        for (i, c) in self.classify.iter().enumerate() {
            let a = actions.iter().position(|a| a.id == c.action).expect("validated");
            if !actions[a].irreps.iter().any(|(n, _)| *n == c.v) {
                return Err(cfg(format!("classify[{i}].v"), format!("no irreducible {}", c.v)));
            }
            classify.push(ClassifyEntry { action: a, v: c.v.clone(), bound: c.bound });
        }

        let groups = order
            .iter()
            .map(|id| Ok((id.clone(), groups[id].group.clone(), groups[id].irreps.lower::<S>(id)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Setting {
            seed: self.seed,
            groups,
            pairs,
            tl,
            actions,
            induced,
            classify,
            su2: self.su2.as_ref().map(|s| s.r.clone()).unwrap_or_default(),
            corpus: self.corpus.clone(),
        })
    }
}
