//! Linear and height-one conditions over typed function symbols.
//!
//! A linear condition is a finite set of identities whose sides contain at
//! most one function symbol each. Height-one identities (both sides are
//! applications) drive the indicator quotient; non-height-one identities such
//! as `x ≈ j(x,x,y)` become precoloring pins. Total symmetry is kept in a
//! symbolic marker form: materializing its identity set would be factorially
//! large, and the indicator consumes the subsets-of-vertices view directly.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSymbol {
    pub name: String,
    pub arity: usize,
}

/// A term: a variable or a single application `f(x_{σ(1)},…,x_{σ(k)})` with
/// `args` holding the variable index per argument position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    App { symbol: usize, args: Vec<usize> },
}

impl Term {
    pub fn is_app(&self) -> bool {
        matches!(self, Term::App { .. })
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::App { args, .. } => out.extend(args.iter().copied()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearIdentity {
    pub lhs: Term,
    pub rhs: Term,
}

impl LinearIdentity {
    pub fn is_height_one(&self) -> bool {
        self.lhs.is_app() && self.rhs.is_app()
    }

    /// Sorted, deduplicated variable indices of both sides.
    pub fn variables(&self) -> Vec<usize> {
        let mut vars = Vec::new();
        self.lhs.collect_vars(&mut vars);
        self.rhs.collect_vars(&mut vars);
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    fn side_vars(term: &Term) -> Vec<usize> {
        let mut vars = Vec::new();
        term.collect_vars(&mut vars);
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// The syntactic certificate for level-wise testing: a height-one
    /// identity in exactly two variables, both appearing on each side.
    pub fn levelwise_certified(&self) -> bool {
        if !self.is_height_one() {
            return false;
        }
        let l = Self::side_vars(&self.lhs);
        let r = Self::side_vars(&self.rhs);
        l.len() == 2 && l == r
    }
}

/// Whether the condition is an explicit identity set or a total-symmetry
/// marker (`arity: None` means all arities, resolved to `2|E(H)|` per
/// template).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionKind {
    Explicit,
    TotallySymmetric { arity: Option<usize> },
}

#[derive(Clone, Debug)]
pub struct LinearCondition {
    pub name: String,
    pub symbols: Vec<FunctionSymbol>,
    /// Variable names, indexed by the `usize` ids appearing in terms.
    pub variables: Vec<String>,
    pub identities: Vec<LinearIdentity>,
    /// True only for conditions whose level-wise verdict is conclusive for
    /// the full condition on balanced digraphs.
    pub levelwise_safe: bool,
    pub kind: ConditionKind,
}

impl LinearCondition {
    pub fn is_totally_symmetric(&self) -> bool {
        matches!(self.kind, ConditionKind::TotallySymmetric { .. })
    }

    pub fn identity_to_string(&self, idx: usize) -> String {
        let id = &self.identities[idx];
        format!(
            "{} = {}",
            self.term_to_string(&id.lhs),
            self.term_to_string(&id.rhs)
        )
    }

    pub fn term_to_string(&self, term: &Term) -> String {
        match term {
            Term::Var(v) => self.variables[*v].clone(),
            Term::App { symbol, args } => {
                let args: Vec<&str> = args.iter().map(|&a| self.variables[a].as_str()).collect();
                format!("{}({})", self.symbols[*symbol].name, args.join(","))
            }
        }
    }
}

struct Builder {
    name: String,
    symbols: Vec<FunctionSymbol>,
    variables: Vec<String>,
    identities: Vec<LinearIdentity>,
}

impl Builder {
    fn new(name: &str) -> Builder {
        Builder {
            name: name.to_string(),
            symbols: Vec::new(),
            variables: Vec::new(),
            identities: Vec::new(),
        }
    }

    fn sym(&mut self, name: String, arity: usize) -> usize {
        self.symbols.push(FunctionSymbol { name, arity });
        self.symbols.len() - 1
    }

    fn var(&mut self, name: &str) -> usize {
        if let Some(i) = self.variables.iter().position(|v| v == name) {
            return i;
        }
        self.variables.push(name.to_string());
        self.variables.len() - 1
    }

    fn app(&self, symbol: usize, args: &[usize]) -> Term {
        debug_assert_eq!(args.len(), self.symbols[symbol].arity);
        Term::App {
            symbol,
            args: args.to_vec(),
        }
    }

    fn identity(&mut self, lhs: Term, rhs: Term) {
        self.identities.push(LinearIdentity { lhs, rhs });
    }

    fn finish(self, levelwise_safe: bool) -> LinearCondition {
        LinearCondition {
            name: self.name,
            symbols: self.symbols,
            variables: self.variables,
            identities: self.identities,
            levelwise_safe,
            kind: ConditionKind::Explicit,
        }
    }
}

/// Error constructing a builtin condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionError {
    UnknownName(String),
    OutOfRange {
        family: String,
        param: usize,
        requirement: &'static str,
    },
    MissingParameter(String),
    UnexpectedParameter(String),
}

impl fmt::Display for ConditionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionError::UnknownName(s) => write!(f, "unknown condition {s:?}"),
            ConditionError::OutOfRange {
                family,
                param,
                requirement,
            } => {
                write!(
                    f,
                    "{family}({param}) is out of range: requires {requirement}"
                )
            }
            ConditionError::MissingParameter(s) => {
                write!(f, "condition family {s:?} needs a parameter")
            }
            ConditionError::UnexpectedParameter(s) => {
                write!(f, "condition {s:?} takes no parameter")
            }
        }
    }
}

/// The Kearnes-Markovič-McKenzie pair: ternary `p`, `q` with
/// `p(x,y,y) ≈ q(y,x,x) ≈ q(x,x,y)` (split into adjacent pairs) and
/// `p(x,y,x) ≈ q(x,y,x)`.
pub fn kmm() -> LinearCondition {
    let mut b = Builder::new("kmm");
    let p = b.sym("p".into(), 3);
    let q = b.sym("q".into(), 3);
    let (x, y) = (b.var("x"), b.var("y"));
    let (l, r) = (b.app(p, &[x, y, y]), b.app(q, &[y, x, x]));
    b.identity(l, r);
    let (l, r) = (b.app(q, &[y, x, x]), b.app(q, &[x, x, y]));
    b.identity(l, r);
    let (l, r) = (b.app(p, &[x, y, x]), b.app(q, &[x, y, x]));
    b.identity(l, r);
    b.finish(true)
}

/// The k-tuple `(x,…,x)` with `y` at `pos`.
fn one_y_at(f: usize, k: usize, pos: usize, x: usize, y: usize) -> Term {
    let args: Vec<usize> = (0..k).map(|i| if i == pos { y } else { x }).collect();
    Term::App { symbol: f, args }
}

/// The k-ary weak near-unanimity condition
/// `f(y,x,…,x) ≈ f(x,y,x,…,x) ≈ ⋯ ≈ f(x,…,x,y)`.
pub fn wnu(k: usize) -> Result<LinearCondition, ConditionError> {
    if k < 2 {
        return Err(ConditionError::OutOfRange {
            family: "wnu".into(),
            param: k,
            requirement: "k >= 2",
        });
    }
    let mut b = Builder::new(&format!("wnu-{k}"));
    let f = b.sym("f".into(), k);
    let (x, y) = (b.var("x"), b.var("y"));
    for i in 0..k - 1 {
        b.identity(one_y_at(f, k, i, x, y), one_y_at(f, k, i + 1, x, y));
    }
    Ok(b.finish(true))
}

/// The 3-4 weak near-unanimity pair: a 3-wnu `f`, a 4-wnu `g`, and
/// `f(x,x,y) ≈ g(x,x,x,y)`.
pub fn wnu34() -> LinearCondition {
    let mut b = Builder::new("wnu34");
    let f = b.sym("f".into(), 3);
    let g = b.sym("g".into(), 4);
    let (x, y) = (b.var("x"), b.var("y"));
    for i in 0..2 {
        b.identity(one_y_at(f, 3, i, x, y), one_y_at(f, 3, i + 1, x, y));
    }
    for i in 0..3 {
        b.identity(one_y_at(g, 4, i, x, y), one_y_at(g, 4, i + 1, x, y));
    }
    let (l, r) = (b.app(f, &[x, x, y]), b.app(g, &[x, x, x, y]));
    b.identity(l, r);
    b.finish(true)
}

/// The k-ary near-unanimity condition
/// `x ≈ f(y,x,…,x) ≈ f(x,y,x,…,x) ≈ ⋯ ≈ f(x,…,x,y)`.
pub fn nu(k: usize) -> Result<LinearCondition, ConditionError> {
    if k < 3 {
        return Err(ConditionError::OutOfRange {
            family: "nu".into(),
            param: k,
            requirement: "k >= 3",
        });
    }
    let mut b = Builder::new(&format!("nu-{k}"));
    let f = b.sym("f".into(), k);
    let (x, y) = (b.var("x"), b.var("y"));
    b.identity(Term::Var(x), one_y_at(f, k, 0, x, y));
    for i in 0..k - 1 {
        b.identity(one_y_at(f, k, i, x, y), one_y_at(f, k, i + 1, x, y));
    }
    Ok(b.finish(false))
}

/// The ternary near-unanimity condition.
pub fn majority() -> LinearCondition {
    let mut c = nu(3).unwrap();
    c.name = "majority".into();
    c
}

/// Jónsson chain of length n: ternary `j_1,…,j_{2n+1}`.
pub fn jonsson(n: usize) -> LinearCondition {
    let mut b = Builder::new(&format!("jonsson-{n}"));
    let j: Vec<usize> = (1..=2 * n + 1).map(|i| b.sym(format!("j{i}"), 3)).collect();
    let (x, y) = (b.var("x"), b.var("y"));
    let r = b.app(j[0], &[x, x, y]);
    b.identity(Term::Var(x), r);
    for i in 1..=n {
        let (l, r) = (
            b.app(j[2 * i - 2], &[x, y, y]),
            b.app(j[2 * i - 1], &[x, y, y]),
        );
        b.identity(l, r);
    }
    for i in 1..=2 * n + 1 {
        let l = b.app(j[i - 1], &[x, y, x]);
        b.identity(l, Term::Var(x));
    }
    for i in 1..=n {
        let (l, r) = (b.app(j[2 * i - 1], &[x, x, y]), b.app(j[2 * i], &[x, x, y]));
        b.identity(l, r);
    }
    let l = b.app(j[2 * n], &[x, y, y]);
    b.identity(l, Term::Var(y));
    b.finish(false)
}

/// Hagemann-Mitschke chain of length n: ternary `p_1,…,p_n`.
pub fn hm(n: usize) -> Result<LinearCondition, ConditionError> {
    if n < 1 {
        return Err(ConditionError::OutOfRange {
            family: "hm".into(),
            param: n,
            requirement: "n >= 1",
        });
    }
    let mut b = Builder::new(&format!("hm-{n}"));
    let p: Vec<usize> = (1..=n).map(|i| b.sym(format!("p{i}"), 3)).collect();
    let (x, y) = (b.var("x"), b.var("y"));
    let r = b.app(p[0], &[x, y, y]);
    b.identity(Term::Var(x), r);
    for i in 0..n - 1 {
        let (l, r) = (b.app(p[i], &[x, x, y]), b.app(p[i + 1], &[x, y, y]));
        b.identity(l, r);
    }
    let l = b.app(p[n - 1], &[x, x, y]);
    b.identity(l, Term::Var(y));
    Ok(b.finish(false))
}

/// Kearnes-Kiss chain of length n >= 2: ternary `d_0,…,d_n`.
pub fn kk(n: usize) -> Result<LinearCondition, ConditionError> {
    if n < 2 {
        return Err(ConditionError::OutOfRange {
            family: "kk".into(),
            param: n,
            requirement: "n >= 2",
        });
    }
    let mut b = Builder::new(&format!("kk-{n}"));
    let d: Vec<usize> = (0..=n).map(|i| b.sym(format!("d{i}"), 3)).collect();
    let (x, y, z) = (b.var("x"), b.var("y"), b.var("z"));
    let l = b.app(d[0], &[x, y, z]);
    b.identity(l, Term::Var(x));
    for i in (0..n).step_by(2) {
        let (l, r) = (b.app(d[i], &[x, y, y]), b.app(d[i + 1], &[x, y, y]));
        b.identity(l, r);
        let (l, r) = (b.app(d[i], &[x, y, x]), b.app(d[i + 1], &[x, y, x]));
        b.identity(l, r);
    }
    for i in (1..n).step_by(2) {
        let (l, r) = (b.app(d[i], &[x, x, y]), b.app(d[i + 1], &[x, x, y]));
        b.identity(l, r);
    }
    let l = b.app(d[n], &[x, y, z]);
    b.identity(l, Term::Var(z));
    Ok(b.finish(false))
}

/// Hobby-McKenzie chain of length n: ternary `d_0,…,d_n, p, e_0,…,e_n`.
pub fn hmck(n: usize) -> Result<LinearCondition, ConditionError> {
    if n < 1 {
        return Err(ConditionError::OutOfRange {
            family: "hmck".into(),
            param: n,
            requirement: "n >= 1",
        });
    }
    let mut b = Builder::new(&format!("hmck-{n}"));
    let d: Vec<usize> = (0..=n).map(|i| b.sym(format!("d{i}"), 3)).collect();
    let p = b.sym("p".into(), 3);
    let e: Vec<usize> = (0..=n).map(|i| b.sym(format!("e{i}"), 3)).collect();
    let (x, y, z) = (b.var("x"), b.var("y"), b.var("z"));
    let l = b.app(d[0], &[x, y, z]);
    b.identity(l, Term::Var(x));
    for i in (0..n).step_by(2) {
        let (l, r) = (b.app(d[i], &[x, y, y]), b.app(d[i + 1], &[x, y, y]));
        b.identity(l, r);
    }
    for i in (1..n).step_by(2) {
        let (l, r) = (b.app(d[i], &[x, x, y]), b.app(d[i + 1], &[x, x, y]));
        b.identity(l, r);
        let (l, r) = (b.app(d[i], &[x, y, x]), b.app(d[i + 1], &[x, y, x]));
        b.identity(l, r);
    }
    let (l, r) = (b.app(d[n], &[x, y, y]), b.app(p, &[x, y, y]));
    b.identity(l, r);
    let (l, r) = (b.app(p, &[x, x, y]), b.app(e[0], &[x, x, y]));
    b.identity(l, r);
    for i in (0..n).step_by(2) {
        let (l, r) = (b.app(e[i], &[x, y, y]), b.app(e[i + 1], &[x, y, y]));
        b.identity(l, r);
    }
    for i in (1..n).step_by(2) {
        let (l, r) = (b.app(e[i], &[x, x, y]), b.app(e[i + 1], &[x, x, y]));
        b.identity(l, r);
    }
    for i in (0..n).step_by(2) {
        let (l, r) = (b.app(e[i], &[x, y, x]), b.app(e[i + 1], &[x, y, x]));
        b.identity(l, r);
    }
    let l = b.app(e[n], &[x, y, z]);
    b.identity(l, Term::Var(z));
    Ok(b.finish(false))
}

/// Noname chain of length n: quaternary `f_0,…,f_n`.
pub fn nn(n: usize) -> LinearCondition {
    let mut b = Builder::new(&format!("nn-{n}"));
    let fs: Vec<usize> = (0..=n).map(|i| b.sym(format!("f{i}"), 4)).collect();
    let (x, y, z) = (b.var("x"), b.var("y"), b.var("z"));
    let l = b.app(fs[0], &[x, y, y, z]);
    b.identity(l, Term::Var(x));
    for i in 0..n {
        let (l, r) = (b.app(fs[i], &[x, x, y, x]), b.app(fs[i + 1], &[x, y, y, x]));
        b.identity(l, r);
        let (l, r) = (b.app(fs[i], &[x, x, y, y]), b.app(fs[i + 1], &[x, y, y, y]));
        b.identity(l, r);
    }
    let l = b.app(fs[n], &[x, x, y, z]);
    b.identity(l, Term::Var(z));
    b.finish(false)
}

/// Total symmetry of a fixed arity, in marker form.
pub fn ts(n: usize) -> Result<LinearCondition, ConditionError> {
    if n < 1 {
        return Err(ConditionError::OutOfRange {
            family: "ts".into(),
            param: n,
            requirement: "n >= 1",
        });
    }
    Ok(LinearCondition {
        name: format!("ts-{n}"),
        symbols: Vec::new(),
        variables: Vec::new(),
        identities: Vec::new(),
        levelwise_safe: true,
        kind: ConditionKind::TotallySymmetric { arity: Some(n) },
    })
}

/// Total symmetry of all arities, equivalent to `ts(2|E(H)|)` per template.
pub fn ts_all() -> LinearCondition {
    LinearCondition {
        name: "ts-all".into(),
        symbols: Vec::new(),
        variables: Vec::new(),
        identities: Vec::new(),
        levelwise_safe: true,
        kind: ConditionKind::TotallySymmetric { arity: None },
    }
}

/// Builds a builtin family by name and optional parameter.
pub fn builtin(family: &str, param: Option<usize>) -> Result<LinearCondition, ConditionError> {
    let need =
        |p: Option<usize>| p.ok_or_else(|| ConditionError::MissingParameter(family.to_string()));
    let none = |c: LinearCondition, p: Option<usize>| {
        if p.is_some() {
            Err(ConditionError::UnexpectedParameter(family.to_string()))
        } else {
            Ok(c)
        }
    };
    match family {
        "kmm" => none(kmm(), param),
        "wnu" => wnu(need(param)?),
        "wnu34" => none(wnu34(), param),
        "majority" => none(majority(), param),
        "nu" => nu(need(param)?),
        "jonsson" => Ok(jonsson(need(param)?)),
        "hm" => hm(need(param)?),
        "kk" => kk(need(param)?),
        "hmck" => hmck(need(param)?),
        "nn" => Ok(nn(need(param)?)),
        "ts" => ts(need(param)?),
        "ts-all" => none(ts_all(), param),
        other => Err(ConditionError::UnknownName(other.to_string())),
    }
}

/// Resolves a CLI-style condition name like `hm-3`, `majority`, or `ts-all`.
pub fn by_cli_name(name: &str) -> Result<LinearCondition, ConditionError> {
    match name {
        "kmm" | "wnu34" | "majority" | "ts-all" => return builtin(name, None),
        "nu-3" => return builtin("majority", None),
        _ => {}
    }
    if let Some((family, param)) = name.rsplit_once('-') {
        if let Ok(p) = param.parse::<usize>() {
            return builtin(family, Some(p));
        }
    }
    Err(ConditionError::UnknownName(name.to_string()))
}

/// A defect found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ArityMismatch {
        identity: usize,
    },
    UnknownSymbol {
        identity: usize,
    },
    UnknownVariable {
        identity: usize,
    },
    /// `x ≈ y`, or an application equated to a variable not among its
    /// arguments: only satisfiable in one-element structures.
    OneElementOnly {
        identity: usize,
    },
    /// `levelwise_safe` is set but no syntactic certificate applies.
    SafeFlagUnjustified,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ArityMismatch { identity } => {
                write!(
                    f,
                    "identity {identity}: argument count differs from symbol arity"
                )
            }
            Violation::UnknownSymbol { identity } => {
                write!(f, "identity {identity}: references an undeclared symbol")
            }
            Violation::UnknownVariable { identity } => {
                write!(f, "identity {identity}: references an undeclared variable")
            }
            Violation::OneElementOnly { identity } => {
                write!(
                    f,
                    "identity {identity}: only satisfied in one-element structures"
                )
            }
            Violation::SafeFlagUnjustified => {
                write!(f, "levelwise_safe is set without a syntactic certificate")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Non-fatal notes, e.g. a cleared safe flag that the syntactic criterion
    /// would have justified.
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks arity consistency and variable usage, rejects variable-to-variable
/// identities, and verifies the `levelwise_safe` flag against the syntactic
/// criterion (total symmetry carries its own certificate).
pub fn validate(c: &LinearCondition) -> ValidationReport {
    let mut report = ValidationReport::default();
    if c.is_totally_symmetric() {
        return report;
    }
    for (i, id) in c.identities.iter().enumerate() {
        for term in [&id.lhs, &id.rhs] {
            match term {
                Term::Var(v) => {
                    if *v >= c.variables.len() {
                        report
                            .violations
                            .push(Violation::UnknownVariable { identity: i });
                    }
                }
                Term::App { symbol, args } => {
                    if *symbol >= c.symbols.len() {
                        report
                            .violations
                            .push(Violation::UnknownSymbol { identity: i });
                        continue;
                    }
                    if args.len() != c.symbols[*symbol].arity {
                        report
                            .violations
                            .push(Violation::ArityMismatch { identity: i });
                    }
                    if args.iter().any(|&a| a >= c.variables.len()) {
                        report
                            .violations
                            .push(Violation::UnknownVariable { identity: i });
                    }
                }
            }
        }
        match (&id.lhs, &id.rhs) {
            (Term::Var(_), Term::Var(_)) => report
                .violations
                .push(Violation::OneElementOnly { identity: i }),
            (Term::App { args, .. }, Term::Var(v)) | (Term::Var(v), Term::App { args, .. }) => {
                if !args.contains(v) {
                    report
                        .violations
                        .push(Violation::OneElementOnly { identity: i });
                }
            }
            _ => {}
        }
    }
    let certified = c.identities.iter().all(|id| id.levelwise_certified());
    if c.levelwise_safe && !certified {
        report.violations.push(Violation::SafeFlagUnjustified);
    }
    if !c.levelwise_safe && certified {
        report.warnings.push(
            "levelwise_safe is cleared but the syntactic certificate applies; the flag is conservative"
                .into(),
        );
    }
    report
}

/// Error parsing the custom condition grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConditionParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition line {}: {}", self.line, self.message)
    }
}

/// Parses the custom condition grammar: one equation per line (or
/// `;`-separated), each a `=`-chain of terms like `p(x,y,y) = q(y,x,x)`.
/// Bare identifiers are variables; `f(xyy)` is shorthand for `f(x,y,y)`.
/// Symbols and arities are inferred; chains split into adjacent pairs;
/// `#` starts a comment.
pub fn parse_condition(text: &str) -> Result<LinearCondition, ConditionParseError> {
    let mut b = Builder::new("custom");
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for eq in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let sides: Vec<&str> = eq.split('=').map(str::trim).collect();
            if sides.len() < 2 {
                return Err(ConditionParseError {
                    line: lineno + 1,
                    message: format!("expected an equation, got {eq:?}"),
                });
            }
            let mut terms = Vec::new();
            for side in sides {
                terms.push(
                    parse_term(side, &mut b).map_err(|message| ConditionParseError {
                        line: lineno + 1,
                        message,
                    })?,
                );
            }
            for pair in terms.windows(2) {
                b.identities.push(LinearIdentity {
                    lhs: pair[0].clone(),
                    rhs: pair[1].clone(),
                });
            }
        }
    }
    let safe = !b.identities.is_empty() && b.identities.iter().all(|id| id.levelwise_certified());
    Ok(b.finish(safe))
}

fn parse_term(side: &str, b: &mut Builder) -> Result<Term, String> {
    if let Some(open) = side.find('(') {
        let name = side[..open].trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(format!("invalid symbol name in {side:?}"));
        }
        let rest = side[open + 1..].trim();
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| format!("missing ')' in {side:?}"))?;
        let args: Vec<String> = if inner.contains(',') {
            inner.split(',').map(|a| a.trim().to_string()).collect()
        } else {
            inner.trim().chars().map(|c| c.to_string()).collect()
        };
        if args.is_empty() || args.iter().any(|a| a.is_empty()) {
            return Err(format!("empty argument in {side:?}"));
        }
        let arity = args.len();
        let symbol = match b.symbols.iter().position(|s| s.name == name) {
            Some(i) => {
                if b.symbols[i].arity != arity {
                    return Err(format!("symbol {name:?} used with ambiguous arity"));
                }
                i
            }
            None => b.sym(name.to_string(), arity),
        };
        let args: Vec<usize> = args.iter().map(|a| b.var(a)).collect();
        Ok(Term::App { symbol, args })
    } else {
        if side.is_empty() || !side.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(format!("invalid variable {side:?}"));
        }
        Ok(Term::Var(b.var(side)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_counts_match_the_definitions() {
        assert_eq!(kmm().identities.len(), 3);
        for k in 2..=5 {
            assert_eq!(wnu(k).unwrap().identities.len(), k - 1);
            if k >= 3 {
                assert_eq!(nu(k).unwrap().identities.len(), k);
            }
        }
        assert_eq!(wnu34().identities.len(), 6);
        assert_eq!(majority().identities.len(), 3);
        for n in 0..=5 {
            assert_eq!(jonsson(n).identities.len(), 4 * n + 3, "jonsson({n})");
            assert_eq!(nn(n).identities.len(), 2 * n + 2, "nn({n})");
        }
        for n in 1..=8 {
            assert_eq!(hm(n).unwrap().identities.len(), n + 1, "hm({n})");
            assert_eq!(hmck(n).unwrap().identities.len(), 3 * n + 4, "hmck({n})");
        }
        for n in 2..=8usize {
            let expect = 2 + 2 * n.div_ceil(2) + n / 2;
            assert_eq!(kk(n).unwrap().identities.len(), expect, "kk({n})");
        }
    }

    #[test]
    fn symbol_counts() {
        assert_eq!(jonsson(2).symbols.len(), 5);
        assert_eq!(hm(3).unwrap().symbols.len(), 3);
        assert_eq!(kk(4).unwrap().symbols.len(), 5);
        assert_eq!(hmck(2).unwrap().symbols.len(), 7);
        assert_eq!(nn(2).symbols.len(), 3);
    }

    #[test]
    fn safe_flags() {
        assert!(kmm().levelwise_safe);
        assert!(wnu(2).unwrap().levelwise_safe);
        assert!(wnu34().levelwise_safe);
        assert!(ts_all().levelwise_safe);
        assert!(!majority().levelwise_safe);
        assert!(!jonsson(1).levelwise_safe);
        assert!(!hm(2).unwrap().levelwise_safe);
        assert!(!kk(2).unwrap().levelwise_safe);
        assert!(!nn(1).levelwise_safe);
    }

    #[test]
    fn builtins_validate() {
        for c in [
            kmm(),
            wnu(2).unwrap(),
            wnu(4).unwrap(),
            wnu34(),
            majority(),
            nu(4).unwrap(),
            jonsson(0),
            jonsson(3),
            hm(1).unwrap(),
            kk(2).unwrap(),
            hmck(1).unwrap(),
            nn(0),
            ts(2).unwrap(),
            ts_all(),
        ] {
            let report = validate(&c);
            assert!(report.is_ok(), "{}: {:?}", c.name, report.violations);
        }
    }

    #[test]
    fn hm1_is_maltsev() {
        let c = hm(1).unwrap();
        assert_eq!(c.identities.len(), 2);
        assert_eq!(c.identity_to_string(0), "x = p1(x,y,y)");
        assert_eq!(c.identity_to_string(1), "p1(x,x,y) = y");
    }

    #[test]
    fn wnu2_is_symmetry() {
        let c = wnu(2).unwrap();
        assert_eq!(c.identity_to_string(0), "f(y,x) = f(x,y)");
    }

    #[test]
    fn jonsson0_is_majority_shaped() {
        let c = jonsson(0);
        assert_eq!(c.symbols.len(), 1);
        assert_eq!(c.identities.len(), 3);
    }

    #[test]
    fn variable_identity_is_rejected() {
        let c = parse_condition("f(x,y) = f(y,x)\nx = y\n").unwrap();
        let report = validate(&c);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::OneElementOnly { .. })));
    }

    #[test]
    fn unbound_constant_is_rejected() {
        let c = parse_condition("f(x,x) = y\n").unwrap();
        assert!(!validate(&c).is_ok());
    }

    #[test]
    fn cleared_safe_flag_warns() {
        let mut c = wnu(2).unwrap();
        c.levelwise_safe = false;
        let report = validate(&c);
        assert!(report.is_ok());
        assert!(!report.warnings.is_empty());
    }

    #[test]
    fn parse_kmm_style_text() {
        let c = parse_condition("p(x,y,y) = q(y,x,x) = q(x,x,y)\np(x,y,x) = q(x,y,x)\n").unwrap();
        assert_eq!(c.symbols.len(), 2);
        assert_eq!(c.identities.len(), 3);
        assert!(c.levelwise_safe);
    }

    #[test]
    fn parse_compact_argument_form() {
        let c = parse_condition("m(xxy)=m(xyx); m(xyx)=m(yxx); x=m(xxx)").unwrap();
        assert_eq!(c.symbols.len(), 1);
        assert_eq!(c.symbols[0].arity, 3);
        assert_eq!(c.identities.len(), 3);
        assert!(!c.levelwise_safe);
    }

    #[test]
    fn parse_rejects_ambiguous_arity() {
        assert!(parse_condition("f(x,y) = f(x,y,y)").is_err());
    }

    #[test]
    fn cli_names_resolve() {
        assert_eq!(by_cli_name("kmm").unwrap().name, "kmm");
        assert_eq!(by_cli_name("wnu-2").unwrap().name, "wnu-2");
        assert_eq!(by_cli_name("nu-3").unwrap().name, "majority");
        assert_eq!(by_cli_name("nu-4").unwrap().name, "nu-4");
        assert_eq!(by_cli_name("ts-all").unwrap().name, "ts-all");
        assert_eq!(by_cli_name("ts-6").unwrap().name, "ts-6");
        assert_eq!(by_cli_name("jonsson-10").unwrap().name, "jonsson-10");
        assert!(by_cli_name("sigma-4").is_err());
        assert!(by_cli_name("hm-0").is_err());
    }
}
