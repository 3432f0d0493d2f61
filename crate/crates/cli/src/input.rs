//! Reading and validating input files; the format is described in
//! `grammar.ebnf` next to this crate's manifest.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use operad_forge::algebra::{GradedAlgebra, LieAlgebraData};
use operad_forge::amodule::AModule;
use operad_forge::linalg::{BasedModule, GroundRing, Scalar, SparseVec};
use operad_forge::operad::{build_standard, OperadKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Validate { line: usize, message: String },
    #[error("line {line}: bracket is not antisymmetric at ({a}, {b})")]
    Antisym { line: usize, a: String, b: String },
}

impl InputError {
    pub fn code(&self) -> &'static str {
        match self {
            InputError::Io { .. } | InputError::Parse { .. } => "E_PARSE",
            InputError::Validate { .. } => "E_VALIDATE",
            InputError::Antisym { .. } => "E_ANTISYM",
        }
    }
}

type Result<T> = std::result::Result<T, InputError>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub max_degree: Option<usize>,
    pub levels: Option<usize>,
    pub index: Option<usize>,
    pub window: Option<(i64, i64)>,
    pub operad: Option<OperadKind>,
    pub generators: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct AlgebraInput {
    pub name: String,
    pub algebra: Arc<GradedAlgebra>,
}

#[derive(Clone, Debug)]
pub enum ModuleShape {
    Regular,
    Augmentation,
    Explicit(AModule),
}

#[derive(Clone, Debug)]
pub struct ModuleInput {
    pub name: String,
    pub over: String,
    pub shape: ModuleShape,
    pub top: Option<i64>,
}

impl ModuleInput {
    /// The module over `a`, which for regular and augmentation modules may
    /// be any truncation of the algebra named in the block.
    pub fn build(&self, a: Arc<GradedAlgebra>) -> operad_forge::Result<AModule> {
        let m = match &self.shape {
            ModuleShape::Regular => AModule::regular(a)?,
            ModuleShape::Augmentation => AModule::augmentation_ideal(a)?,
            ModuleShape::Explicit(m) => return Ok(m.clone()),
        };
        match self.top {
            Some(t) => m.truncate_above(t),
            None => Ok(m),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InputSpec {
    pub ring: GroundRing,
    pub lie: Option<LieAlgebraData>,
    pub algebra: Option<AlgebraInput>,
    pub module: Option<ModuleInput>,
    pub options: Options,
}

pub fn parse_spec(path: &Path, ring_override: Option<GroundRing>) -> Result<(InputSpec, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| InputError::Parse { line: 1, column: 1, message: format!("not UTF-8: {e}") })?;
    Ok((parse_str(&text, ring_override)?, bytes))
}

/// Accepts `rationals`, `integers`, `prime:p` and the short forms `QQ`,
/// `ZZ`, `Fp`.
pub fn parse_ring(s: &str) -> std::result::Result<GroundRing, String> {
    let prime = |p: &str| -> std::result::Result<GroundRing, String> {
        let p: u64 = p.parse().map_err(|_| format!("bad characteristic {p:?}"))?;
        GroundRing::prime_field(p).map_err(|_| format!("characteristic must be prime, got {p}"))
    };
    match s {
        "rationals" | "QQ" | "Q" => Ok(GroundRing::Rationals),
        "integers" | "ZZ" | "Z" => Ok(GroundRing::Integers),
        _ => {
            if let Some(p) = s.strip_prefix("prime:") {
                prime(p)
            } else if let Some(p) = s.strip_prefix('F') {
                prime(p)
            } else {
                Err(format!("unknown ring {s:?}"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_' || chars[k] == '\'') {
                k += 1;
            }
            out.push(Token { tok: Tok::Word(chars[start..k].iter().collect()), col });
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push(Token { tok: Tok::Num(chars[start..k].iter().collect()), col });
        } else if "{},=*+-:/".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            k += 1;
        } else {
            return Err(InputError::Parse { line: line_no, column: col, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
struct Line {
    no: usize,
    toks: Vec<Token>,
    pos: usize,
    end_col: usize,
}

impl Line {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let column = self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col);
        Err(InputError::Parse { line: self.no, column, message: message.into() })
    }

    fn invalid<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(InputError::Validate { line: self.no, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn word(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn sym(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(&Tok::Sym(c));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn natural(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v = n.parse().expect("digits");
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected a number"),
        }
    }

    fn small(&mut self) -> Result<usize> {
        let n = self.natural()?;
        match usize::try_from(&n) {
            Ok(v) if v <= 1 << 20 => Ok(v),
            _ => self.invalid(format!("{n} is too large")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let n = self.small()? as i64;
        Ok(if neg { -n } else { n })
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected text at end of line")
        }
    }

    /// `combination` of the grammar, as (coefficient, name) terms with
    /// rational coefficients.
    fn combination(&mut self) -> Result<Vec<(Scalar, String)>> {
        let mut terms = Vec::new();
        if self.peek() == Some(&Tok::Num("0".into())) && self.toks.len() == self.pos + 1 {
            self.pos += 1;
            return Ok(terms);
        }
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return self.err("expected '+' or '-'");
            };
            first = false;
            let mut coef = Scalar::from_integer(1.into());
            if let Some(Tok::Num(_)) = self.peek() {
                let num = self.natural()?;
                let den = if self.eat('/') { self.natural()? } else { BigInt::from(1) };
                if den == BigInt::from(0) {
                    return self.invalid("zero denominator");
                }
                coef = Scalar::new(num, den);
                self.eat('*');
            }
            let name = self.word("a basis name")?;
            terms.push((if negative { -coef } else { coef }, name));
            if self.at_end() {
                return Ok(terms);
            }
        }
    }
}

/// Resolves the names of a combination and brings the coefficients into
/// `ring`.
fn to_vector(
    ring: GroundRing,
    line: &Line,
    terms: &[(Scalar, String)],
    index: &BTreeMap<String, usize>,
) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (c, name) in terms {
        let Some(&k) = index.get(name) else {
            return line.invalid(format!("unknown basis name {name:?}"));
        };
        let num = ring.from_bigint(c.numer().clone());
        let den = ring.from_bigint(c.denom().clone());
        let Some(c) = ring.div(&num, &den) else {
            return line.invalid(format!("coefficient {c} does not lie in {ring}"));
        };
        v.add_at(ring, k, &c);
    }
    Ok(v)
}

#[derive(Default)]
struct RawLie {
    line: usize,
    name: String,
    basis: Option<(usize, Vec<String>)>,
    brackets: Vec<(usize, String, String, Vec<(Scalar, String)>)>,
}

#[derive(Default)]
struct RawAlgebra {
    line: usize,
    name: String,
    operad: Option<OperadKind>,
    degrees: Vec<(usize, usize, Vec<String>)>,
    unit: Option<(usize, String)>,
    augmented: Option<bool>,
    products: Vec<(usize, String, String, Vec<(Scalar, String)>)>,
}

#[derive(Default)]
struct RawModule {
    line: usize,
    name: String,
    over: String,
    kind: Option<(usize, String)>,
    top: Option<i64>,
    degrees: Vec<(usize, i64, Vec<String>)>,
    actions: Vec<(usize, String, String, Vec<(Scalar, String)>)>,
}

enum Block {
    Ring,
    Lie,
    Algebra,
    Module,
    Options,
}

fn check_names(line: usize, names: &[String], seen: &mut BTreeSet<String>) -> Result<()> {
    for n in names {
        if !seen.insert(n.clone()) {
            return Err(InputError::Validate { line, message: format!("basis name {n:?} declared twice") });
        }
    }
    Ok(())
}

pub fn parse_str(text: &str, ring_override: Option<GroundRing>) -> Result<InputSpec> {
    let mut ring_kind: Option<(usize, String)> = None;
    let mut characteristic: Option<(usize, u64)> = None;
    let mut ring_seen = false;
    let mut lie: Option<RawLie> = None;
    let mut algebra: Option<RawAlgebra> = None;
    let mut module: Option<RawModule> = None;
    let mut options = Options::default();
    let mut options_seen = false;
    let mut current: Option<Block> = None;
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let no = k + 1;
        last_line = no;
        let toks = tokenize(no, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut l = Line { no, toks, pos: 0, end_col: raw.chars().count() + 1 };
        if current.is_some() && l.peek() == Some(&Tok::Sym('}')) {
            l.pos += 1;
            l.finish()?;
            current = None;
            continue;
        }
        match current {
            None => {
                let head = l.word("a block keyword")?;
                let duplicate = |l: &Line| l.invalid(format!("second {head} block"));
                current = Some(match head.as_str() {
                    "ring" => {
                        if ring_seen {
                            return duplicate(&l);
                        }
                        ring_seen = true;
                        Block::Ring
                    }
                    "lie" | "algebra" => {
                        if lie.is_some() || algebra.is_some() {
                            return l.invalid("at most one lie or algebra block is allowed");
                        }
                        let name = l.word("a name")?;
                        if head == "lie" {
                            lie = Some(RawLie { line: no, name, ..Default::default() });
                            Block::Lie
                        } else {
                            algebra = Some(RawAlgebra { line: no, name, ..Default::default() });
                            Block::Algebra
                        }
                    }
                    "module" => {
                        if module.is_some() {
                            return duplicate(&l);
                        }
                        let name = l.word("a name")?;
                        if l.word("'over'")? != "over" {
                            l.pos -= 1;
                            return l.err("expected 'over'");
                        }
                        let over = l.word("an algebra name")?;
                        module = Some(RawModule { line: no, name, over, ..Default::default() });
                        Block::Module
                    }
                    "options" => {
                        if options_seen {
                            return duplicate(&l);
                        }
                        options_seen = true;
                        Block::Options
                    }
                    _ => {
                        l.pos -= 1;
                        return l.err(format!("unknown block {head:?}"));
                    }
                });
                l.sym('{')?;
                l.finish()?;
            }
            Some(ref block) => {
                let key = l.word("a key")?;
                let unknown = |l: &mut Line| {
                    l.pos -= 1;
                    l.err::<()>(format!("unknown key {key:?}"))
                };
                match block {
                    Block::Ring => match key.as_str() {
                        "kind" => ring_kind = Some((no, l.word("a ring kind")?)),
                        "characteristic" => {
                            let n = l.natural()?;
                            let Ok(p) = u64::try_from(&n) else {
                                return l.invalid(format!("characteristic {n} is too large"));
                            };
                            characteristic = Some((no, p));
                        }
                        _ => unknown(&mut l)?,
                    },
                    Block::Lie => {
                        let raw = lie.as_mut().expect("open lie block");
                        match key.as_str() {
                            "basis" => {
                                let mut names = vec![l.word("a basis name")?];
                                while !l.at_end() {
                                    names.push(l.word("a basis name")?);
                                }
                                if raw.basis.is_some() {
                                    return l.invalid("basis declared twice");
                                }
                                raw.basis = Some((no, names));
                            }
                            "bracket" => {
                                let a = l.word("a basis name")?;
                                l.sym(',')?;
                                let b = l.word("a basis name")?;
                                l.sym('=')?;
                                let v = l.combination()?;
                                raw.brackets.push((no, a, b, v));
                            }
                            _ => unknown(&mut l)?,
                        }
                    }
                    Block::Algebra => {
                        let raw = algebra.as_mut().expect("open algebra block");
                        match key.as_str() {
                            "operad" => {
                                let w = l.word("com or ass")?;
                                raw.operad = match OperadKind::parse(&w) {
                                    Some(k @ (OperadKind::Com | OperadKind::Ass)) => Some(k),
                                    _ => return l.invalid(format!("algebras are over com or ass, not {w:?}")),
                                };
                            }
                            "degree" => {
                                let d = l.small()?;
                                l.sym(':')?;
                                let mut names = Vec::new();
                                while !l.at_end() {
                                    names.push(l.word("a basis name")?);
                                }
                                raw.degrees.push((no, d, names));
                            }
                            "unit" => raw.unit = Some((no, l.word("a basis name")?)),
                            "augmented" => {
                                raw.augmented = match l.word("yes or no")?.as_str() {
                                    "yes" => Some(true),
                                    "no" => Some(false),
                                    _ => {
                                        l.pos -= 1;
                                        return l.err("expected yes or no");
                                    }
                                }
                            }
                            "product" => {
                                let a = l.word("a basis name")?;
                                l.sym('*')?;
                                let b = l.word("a basis name")?;
                                l.sym('=')?;
                                let v = l.combination()?;
                                raw.products.push((no, a, b, v));
                            }
                            _ => unknown(&mut l)?,
                        }
                    }
                    Block::Module => {
                        let raw = module.as_mut().expect("open module block");
                        match key.as_str() {
                            "kind" => raw.kind = Some((no, l.word("a module kind")?)),
                            "top" => raw.top = Some(l.integer()?),
                            "degree" => {
                                let d = l.integer()?;
                                l.sym(':')?;
                                let mut names = Vec::new();
                                while !l.at_end() {
                                    names.push(l.word("a basis name")?);
                                }
                                raw.degrees.push((no, d, names));
                            }
                            "act" => {
                                let a = l.word("a basis name")?;
                                l.sym('*')?;
                                let b = l.word("a basis name")?;
                                l.sym('=')?;
                                let v = l.combination()?;
                                raw.actions.push((no, a, b, v));
                            }
                            _ => unknown(&mut l)?,
                        }
                    }
                    Block::Options => match key.as_str() {
                        "max_degree" => options.max_degree = Some(l.small()?),
                        "levels" => options.levels = Some(l.small()?),
                        "index" => options.index = Some(l.small()?),
                        "window" => {
                            let lo = l.integer()?;
                            let hi = l.integer()?;
                            if lo > hi {
                                return l.invalid("window must be increasing");
                            }
                            options.window = Some((lo, hi));
                        }
                        "operad" => {
                            let w = l.word("an operad name")?;
                            options.operad = match OperadKind::parse(&w) {
                                Some(k) => Some(k),
                                None => return l.invalid(format!("unknown operad {w:?}")),
                            };
                        }
                        "generators" => {
                            let mut names = vec![l.word("a generator name")?];
                            while !l.at_end() {
                                names.push(l.word("a generator name")?);
                            }
                            options.generators = Some(names);
                        }
                        _ => unknown(&mut l)?,
                    },
                }
                l.finish()?;
            }
        }
    }
    if current.is_some() {
        return Err(InputError::Parse { line: last_line + 1, column: 1, message: "unclosed block".into() });
    }

    let ring = match ring_override {
        Some(r) => r,
        None => ring_from(ring_seen, ring_kind, characteristic)?,
    };
    let lie = lie.map(|raw| build_lie(ring, raw)).transpose()?;
    let algebra = algebra.map(|raw| build_algebra(ring, raw)).transpose()?;
    let module = match module {
        None => None,
        Some(raw) => Some(build_module(raw, lie.as_ref(), algebra.as_ref())?),
    };
    Ok(InputSpec { ring, lie, algebra, module, options })
}

fn ring_from(seen: bool, kind: Option<(usize, String)>, characteristic: Option<(usize, u64)>) -> Result<GroundRing> {
    if !seen {
        return Err(InputError::Validate { line: 1, message: "missing ring block".into() });
    }
    let Some((line, kind)) = kind else {
        return Err(InputError::Validate { line: characteristic.map_or(1, |c| c.0), message: "ring block needs a kind".into() });
    };
    let char_line = characteristic.map_or(line, |c| c.0);
    match (kind.as_str(), characteristic.map(|c| c.1)) {
        ("rationals", None | Some(0)) => Ok(GroundRing::Rationals),
        ("integers", None | Some(0)) => Ok(GroundRing::Integers),
        ("rationals" | "integers", Some(c)) => {
            Err(InputError::Validate { line: char_line, message: format!("{kind} have characteristic 0, not {c}") })
        }
        ("prime", Some(p)) => GroundRing::prime_field(p)
            .map_err(|_| InputError::Validate { line: char_line, message: format!("characteristic must be prime, got {p}") }),
        ("prime", None) => Err(InputError::Validate { line, message: "a prime field needs a characteristic".into() }),
        _ => Err(InputError::Validate { line, message: format!("unknown ring kind {kind:?}") }),
    }
}

fn index_of(names: &[String]) -> BTreeMap<String, usize> {
    names.iter().enumerate().map(|(k, n)| (n.clone(), k)).collect()
}

fn build_lie(ring: GroundRing, raw: RawLie) -> Result<LieAlgebraData> {
    let Some((_, labels)) = raw.basis else {
        return Err(InputError::Validate { line: raw.line, message: "lie block needs a basis line".into() });
    };
    check_names(raw.line, &labels, &mut BTreeSet::new())?;
    let index = index_of(&labels);
    let mut seen: BTreeMap<(usize, usize), (SparseVec, usize)> = BTreeMap::new();
    let mut entries = Vec::new();
    for (no, a, b, terms) in raw.brackets {
        let line = Line { no, toks: Vec::new(), pos: 0, end_col: 1 };
        let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
            return line.invalid(format!("bracket [{a}, {b}] names an undeclared basis vector"));
        };
        let v = to_vector(ring, &line, &terms, &index)?;
        if ia == ib {
            if !v.is_zero() {
                return Err(InputError::Antisym { line: no, a, b });
            }
            continue;
        }
        let (key, value) = if ia < ib { ((ia, ib), v) } else { ((ib, ia), v.neg(ring)) };
        if let Some((old, _)) = seen.get(&key) {
            if *old != value {
                return Err(InputError::Antisym { line: no, a, b });
            }
            continue;
        }
        seen.insert(key, (value.clone(), no));
        entries.push((key.0, key.1, value));
    }
    let module = BasedModule { ring, labels };
    LieAlgebraData::from_brackets(&raw.name, module, &entries)
        .map_err(|e| InputError::Validate { line: raw.line, message: e.to_string() })
}

fn build_algebra(ring: GroundRing, raw: RawAlgebra) -> Result<AlgebraInput> {
    let invalid = |line: usize, message: String| InputError::Validate { line, message };
    let kind = raw.operad.ok_or_else(|| invalid(raw.line, "algebra block needs an operad line".into()))?;
    let mut components: Vec<Vec<String>> = Vec::new();
    let mut seen = BTreeSet::new();
    for (no, d, names) in &raw.degrees {
        if *d != components.len() {
            return Err(invalid(*no, format!("expected degree {} next", components.len())));
        }
        check_names(*no, names, &mut seen)?;
        components.push(names.clone());
    }
    if components.is_empty() {
        return Err(invalid(raw.line, "algebra block needs degree lines".into()));
    }
    let labels: Vec<String> = components.concat();
    let degree: Vec<usize> = components.iter().enumerate().flat_map(|(d, c)| std::iter::repeat(d).take(c.len())).collect();
    let index = index_of(&labels);
    let n = labels.len();
    let top = components.len() - 1;
    let unit = match &raw.unit {
        None => None,
        Some((no, u)) => match index.get(u) {
            Some(&k) if degree[k] == 0 => Some(k),
            Some(_) => return Err(invalid(*no, format!("unit {u:?} must have degree 0"))),
            None => return Err(invalid(*no, format!("unknown unit {u:?}"))),
        },
    };
    let mut product: Vec<Option<(SparseVec, usize)>> = vec![None; n * n];
    let mut set = |k: usize, v: SparseVec, no: usize| -> Result<()> {
        match &product[k] {
            Some((old, _)) if *old != v => Err(invalid(no, format!("conflicting products for {} * {}", labels[k / n], labels[k % n]))),
            _ => {
                product[k] = Some((v, no));
                Ok(())
            }
        }
    };
    if let Some(u) = unit {
        for i in 0..n {
            set(u * n + i, SparseVec::unit(i), raw.line)?;
            set(i * n + u, SparseVec::unit(i), raw.line)?;
        }
    }
    for (no, a, b, terms) in &raw.products {
        let line = Line { no: *no, toks: Vec::new(), pos: 0, end_col: 1 };
        let (Some(&ia), Some(&ib)) = (index.get(a), index.get(b)) else {
            return line.invalid(format!("product {a} * {b} names an undeclared basis vector"));
        };
        let v = to_vector(ring, &line, terms, &index)?;
        let d = degree[ia] + degree[ib];
        if v.indices().any(|k| degree[k] != d) {
            return line.invalid(format!("{a} * {b} must be homogeneous of degree {d}"));
        }
        if d > top && !v.is_zero() {
            return line.invalid(format!("{a} * {b} lies beyond the top degree {top}"));
        }
        set(ia * n + ib, v.clone(), *no)?;
        if kind == OperadKind::Com {
            set(ib * n + ia, v, *no)?;
        }
    }
    let product: Vec<SparseVec> = product.into_iter().map(|p| p.map(|(v, _)| v).unwrap_or_default()).collect();
    let augmented = raw.augmented.unwrap_or(unit.is_some() && components[0].len() == 1);
    let op = build_standard(kind, unit.is_some(), ring, 3).map_err(|e| invalid(raw.line, e.to_string()))?;
    let algebra = GradedAlgebra::from_product(Arc::new(op), components, product, unit, augmented)
        .map_err(|e| invalid(raw.line, e.to_string()))?;
    let report = algebra.check(top);
    if !report.passed() {
        return Err(invalid(raw.line, format!("the products do not define a {} algebra: {}", kind.name(), report.to_string().trim_end())));
    }
    Ok(AlgebraInput { name: raw.name, algebra: Arc::new(algebra) })
}

fn build_module(raw: RawModule, lie: Option<&LieAlgebraData>, algebra: Option<&AlgebraInput>) -> Result<ModuleInput> {
    let invalid = |line: usize, message: String| InputError::Validate { line, message };
    let target = match (lie, algebra) {
        (Some(g), _) if g.name == raw.over => None,
        (_, Some(a)) if a.name == raw.over => Some(a.algebra.clone()),
        _ => return Err(invalid(raw.line, format!("module over unknown algebra {:?}", raw.over))),
    };
    let (kind_line, kind) = raw.kind.clone().unwrap_or((raw.line, "explicit".into()));
    let shape = match kind.as_str() {
        "regular" => ModuleShape::Regular,
        "augmentation" => ModuleShape::Augmentation,
        "explicit" => {
            let Some(a) = target else {
                return Err(invalid(kind_line, "explicit modules need an algebra block; over S(g) use regular or augmentation".into()));
            };
            ModuleShape::Explicit(explicit_module(&raw, a)?)
        }
        _ => return Err(invalid(kind_line, format!("unknown module kind {kind:?}"))),
    };
    if !matches!(shape, ModuleShape::Explicit(_)) && (!raw.degrees.is_empty() || !raw.actions.is_empty()) {
        return Err(invalid(raw.line, format!("a {kind} module takes no degree or act lines")));
    }
    Ok(ModuleInput { name: raw.name, over: raw.over, shape, top: raw.top })
}

fn explicit_module(raw: &RawModule, a: Arc<GradedAlgebra>) -> Result<AModule> {
    let invalid = |line: usize, message: String| InputError::Validate { line, message };
    let ring = a.ring();
    let mut seen: BTreeSet<String> = a.labels().iter().cloned().collect();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for (no, d, names) in &raw.degrees {
        check_names(*no, names, &mut seen)?;
        labels.extend(names.iter().cloned());
        degrees.extend(std::iter::repeat(*d).take(names.len()));
    }
    if labels.is_empty() {
        return Err(invalid(raw.line, "explicit module needs degree lines".into()));
    }
    let top = raw.top.unwrap_or_else(|| *degrees.iter().max().expect("nonempty"));
    let m_index = index_of(&labels);
    let a_index = index_of(a.labels());
    let dim = labels.len();
    let mut first_a: Vec<Option<SparseVec>> = vec![None; a.dim() * dim];
    let mut first_m: Vec<Option<SparseVec>> = vec![None; a.dim() * dim];
    let commutative = a.operad().kind() == OperadKind::Com;
    let put = |table: &mut Vec<Option<SparseVec>>, k: usize, v: SparseVec, no: usize| -> Result<()> {
        match &table[k] {
            Some(old) if *old != v => Err(invalid(no, "conflicting action".into())),
            _ => {
                table[k] = Some(v);
                Ok(())
            }
        }
    };
    if let Some(u) = a.unit() {
        for m in 0..dim {
            put(&mut first_a, u * dim + m, SparseVec::unit(m), raw.line)?;
            put(&mut first_m, u * dim + m, SparseVec::unit(m), raw.line)?;
        }
    }
    for (no, x, y, terms) in &raw.actions {
        let line = Line { no: *no, toks: Vec::new(), pos: 0, end_col: 1 };
        let (left, ia, im) = match (a_index.get(x), m_index.get(y), m_index.get(x), a_index.get(y)) {
            (Some(&ia), Some(&im), _, _) => (true, ia, im),
            (_, _, Some(&im), Some(&ia)) => (false, ia, im),
            _ => return line.invalid(format!("act {x} * {y} needs one algebra and one module basis name")),
        };
        let v = to_vector(ring, &line, terms, &m_index)?;
        let d = a.degree(ia) as i64 + degrees[im];
        if v.indices().any(|k| degrees[k] != d) {
            return line.invalid(format!("{x} * {y} must be homogeneous of degree {d}"));
        }
        if left || commutative {
            put(&mut first_a, ia * dim + im, v.clone(), *no)?;
        }
        if !left || commutative {
            put(&mut first_m, ia * dim + im, v, *no)?;
        }
    }
    let fill = |t: Vec<Option<SparseVec>>| t.into_iter().map(Option::unwrap_or_default).collect::<Vec<_>>();
    let m = AModule::from_action(a.clone(), labels, degrees, top, fill(first_a), fill(first_m))
        .map_err(|e| invalid(raw.line, e.to_string()))?;
    let report = m.check(a.max_degree());
    if !report.passed() {
        return Err(invalid(raw.line, format!("the action does not define a module: {}", report.to_string().trim_end())));
    }
    Ok(m)
}
