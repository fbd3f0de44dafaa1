//! Text operation traces: a `problem` line, header lines, then one operation per line.
//!
//! ```text
//! # comment
//! problem sequence-mode
//! capacity 16
//! SINS 1 5
//! SQRY 1 1
//! ```

use std::fmt;
use std::str::FromStr;

use dynds_core::{Error, Result};

/// Dynamic problem a trace runs against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    RangeMode,
    SequenceMode,
    CommonColors,
    ColorCount,
    Klee,
    Halfspace,
    Skyline,
    Langerman,
    Erickson,
    Hyperclique,
}

impl Problem {
    pub const ALL: [Problem; 10] = [
        Problem::RangeMode,
        Problem::SequenceMode,
        Problem::CommonColors,
        Problem::ColorCount,
        Problem::Klee,
        Problem::Halfspace,
        Problem::Skyline,
        Problem::Langerman,
        Problem::Erickson,
        Problem::Hyperclique,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::RangeMode => "range-mode",
            Problem::SequenceMode => "sequence-mode",
            Problem::CommonColors => "common-colors",
            Problem::ColorCount => "color-count",
            Problem::Klee => "klee",
            Problem::Halfspace => "halfspace",
            Problem::Skyline => "skyline",
            Problem::Langerman => "langerman",
            Problem::Erickson => "erickson",
            Problem::Hyperclique => "hyperclique",
        }
    }

    /// Dimension used when the header omits it.
    pub fn default_dim(self) -> usize {
        match self {
            Problem::RangeMode | Problem::SequenceMode | Problem::CommonColors | Problem::Langerman => 1,
            Problem::ColorCount | Problem::Klee | Problem::Halfspace | Problem::Erickson | Problem::Hyperclique => 2,
            Problem::Skyline => 3,
        }
    }

    pub fn kinds(self) -> &'static [OpKind] {
        use OpKind::*;
        match self {
            Problem::RangeMode => &[Ins, Del, Qry],
            Problem::SequenceMode => &[Sins, Sdel, Sqry],
            Problem::CommonColors => &[Con, Coff, Cqry],
            Problem::ColorCount => &[Pins, Pdel, Pqry],
            Problem::Klee => &[Kins, Kdel, Kvol],
            Problem::Halfspace => &[Hins, Hdel, Hpin, Hpdel, Hmin],
            Problem::Skyline => &[Soins, Sodel, Soqry],
            Problem::Langerman => &[Lset, Lqry],
            Problem::Erickson => &[Einc, Emax],
            Problem::Hyperclique => &[Heins, Hedel, Hsq],
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown problem `{s}`")))
    }
}

/// Operation keyword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Ins,
    Del,
    Qry,
    Sins,
    Sdel,
    Sqry,
    Con,
    Coff,
    Cqry,
    Pins,
    Pdel,
    Pqry,
    Kins,
    Kdel,
    Kvol,
    Hins,
    Hdel,
    Hpin,
    Hpdel,
    Hmin,
    Soins,
    Sodel,
    Soqry,
    Lset,
    Lqry,
    Einc,
    Emax,
    Heins,
    Hedel,
    Hsq,
}

impl OpKind {
    const ALL: [OpKind; 30] = [
        OpKind::Ins,
        OpKind::Del,
        OpKind::Qry,
        OpKind::Sins,
        OpKind::Sdel,
        OpKind::Sqry,
        OpKind::Con,
        OpKind::Coff,
        OpKind::Cqry,
        OpKind::Pins,
        OpKind::Pdel,
        OpKind::Pqry,
        OpKind::Kins,
        OpKind::Kdel,
        OpKind::Kvol,
        OpKind::Hins,
        OpKind::Hdel,
        OpKind::Hpin,
        OpKind::Hpdel,
        OpKind::Hmin,
        OpKind::Soins,
        OpKind::Sodel,
        OpKind::Soqry,
        OpKind::Lset,
        OpKind::Lqry,
        OpKind::Einc,
        OpKind::Emax,
        OpKind::Heins,
        OpKind::Hedel,
        OpKind::Hsq,
    ];

    pub fn keyword(self) -> &'static str {
        use OpKind::*;
        match self {
            Ins => "INS",
            Del => "DEL",
            Qry => "QRY",
            Sins => "SINS",
            Sdel => "SDEL",
            Sqry => "SQRY",
            Con => "CON",
            Coff => "COFF",
            Cqry => "CQRY",
            Pins => "PINS",
            Pdel => "PDEL",
            Pqry => "PQRY",
            Kins => "KINS",
            Kdel => "KDEL",
            Kvol => "KVOL",
            Hins => "HINS",
            Hdel => "HDEL",
            Hpin => "HPIN",
            Hpdel => "HPDEL",
            Hmin => "HMIN",
            Soins => "SOINS",
            Sodel => "SODEL",
            Soqry => "SOQRY",
            Lset => "LSET",
            Lqry => "LQRY",
            Einc => "EINC",
            Emax => "EMAX",
            Heins => "HEINS",
            Hedel => "HEDEL",
            Hsq => "HSQ",
        }
    }

    /// Number of integer arguments at dimension `d`.
    pub fn arity(self, d: usize) -> usize {
        use OpKind::*;
        match self {
            Ins | Del | Soins | Lset => d + 1,
            Qry => 2 * d,
            Sins | Einc => 2,
            Sdel | Con | Coff => 1,
            Sqry => 2,
            Cqry | Pqry => 4,
            Pins | Pdel => 3,
            Kins | Kdel | Hpin | Hpdel | Heins | Hedel => d,
            Hins | Hdel => d + 2,
            Kvol | Hmin | Sodel | Soqry | Lqry | Emax | Hsq => 0,
        }
    }

    pub fn is_query(self) -> bool {
        use OpKind::*;
        matches!(self, Qry | Sqry | Cqry | Pqry | Kvol | Hmin | Soqry | Lqry | Emax | Hsq)
    }
}

impl FromStr for OpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OpKind::ALL
            .into_iter()
            .find(|k| k.keyword() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown operation `{s}`")))
    }
}

/// Header fields; absent fields take per-problem defaults when solving.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Header {
    pub dim: Option<usize>,
    pub capacity: Option<usize>,
    pub scale: Option<i64>,
    /// Heavy/light threshold, rebuild period or block size, depending on the problem.
    pub threshold: Option<usize>,
    /// Cube side as a raw value at `scale`.
    pub side: Option<i64>,
    /// Fixed vertex of the hyperclique problem.
    pub source: Option<usize>,
    /// Colour array of the common-colours problem.
    pub array: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Op {
    pub kind: OpKind,
    pub args: Vec<i64>,
}

impl Op {
    pub fn new(kind: OpKind, args: Vec<i64>) -> Self {
        Self { kind, args }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.keyword())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTrace {
    pub problem: Problem,
    pub header: Header,
    pub ops: Vec<Op>,
}

impl OpTrace {
    pub fn new(problem: Problem) -> Self {
        Self { problem, header: Header::default(), ops: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.header.dim.unwrap_or(self.problem.default_dim())
    }

    pub fn scale(&self) -> i64 {
        self.header.scale.unwrap_or(1)
    }

    /// Declared capacity, or the number of insertions.
    pub fn capacity(&self) -> usize {
        self.header.capacity.unwrap_or_else(|| {
            let inserts = self
                .ops
                .iter()
                .filter(|o| matches!(o.kind, OpKind::Ins | OpKind::Sins | OpKind::Pins | OpKind::Kins | OpKind::Soins))
                .count();
            inserts.max(1)
        })
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = format!("problem {}\n", self.problem);
        let mut field = |key: &str, v: Option<String>| {
            if let Some(v) = v {
                out += &format!("{key} {v}\n");
            }
        };
        field("dim", h.dim.map(|v| v.to_string()));
        field("capacity", h.capacity.map(|v| v.to_string()));
        field("scale", h.scale.map(|v| v.to_string()));
        field("threshold", h.threshold.map(|v| v.to_string()));
        field("side", h.side.map(|v| v.to_string()));
        field("source", h.source.map(|v| v.to_string()));
        field("array", h.array.as_ref().map(|a| a.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")));
        for op in &self.ops {
            out += &format!("{op}\n");
        }
        out
    }

    /// Parse a trace; errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut trace: Option<OpTrace> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| Error::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            let key = words.next().expect("non-empty line");
            let rest: Vec<&str> = words.collect();
            let Some(t) = trace.as_mut() else {
                if key != "problem" || rest.len() != 1 {
                    return Err(err("expected `problem <id>` first".into()));
                }
                let problem = rest[0].parse::<Problem>().map_err(|e| err(e.to_string()))?;
                trace = Some(OpTrace::new(problem));
                continue;
            };
            if key.chars().next().is_some_and(|c| c.is_ascii_lowercase()) {
                if !t.ops.is_empty() {
                    return Err(err(format!("header field `{key}` after the first operation")));
                }
                t.set_field(key, &rest).map_err(err)?;
                continue;
            }
            let kind = key.parse::<OpKind>().map_err(|e| err(e.to_string()))?;
            if !t.problem.kinds().contains(&kind) {
                return Err(err(format!("operation {key} does not belong to problem {}", t.problem)));
            }
            let args = rest
                .iter()
                .map(|w| w.parse::<i64>().map_err(|_| err(format!("`{w}` is not an integer"))))
                .collect::<Result<Vec<_>>>()?;
            let want = kind.arity(t.dim());
            if args.len() != want {
                return Err(err(format!("{key} takes {want} arguments, got {}", args.len())));
            }
            if matches!(kind, OpKind::Hins | OpKind::Hdel) && !matches!(args[want - 1], 0 | 1) {
                return Err(err("strictness flag must be 0 or 1".into()));
            }
            t.ops.push(Op { kind, args });
        }
        trace.ok_or(Error::Parse { line: text.lines().count().max(1), message: "missing `problem` line".into() })
    }

    fn set_field(&mut self, key: &str, rest: &[&str]) -> std::result::Result<(), String> {
        fn one<T: FromStr>(key: &str, rest: &[&str]) -> std::result::Result<Option<T>, String> {
            match rest {
                [v] => v.parse().map(Some).map_err(|_| format!("bad value `{v}` for `{key}`")),
                _ => Err(format!("`{key}` takes one value")),
            }
        }
        let h = &mut self.header;
        match key {
            "dim" => {
                h.dim = one(key, rest)?;
                if h.dim == Some(0) {
                    return Err("dimension must be positive".into());
                }
            }
            "capacity" => h.capacity = one(key, rest)?,
            "scale" => {
                h.scale = one(key, rest)?;
                if h.scale.is_some_and(|s| s <= 0) {
                    return Err("scale must be positive".into());
                }
            }
            "threshold" => h.threshold = one(key, rest)?,
            "side" => h.side = one(key, rest)?,
            "source" => h.source = one(key, rest)?,
            "array" => {
                let a = rest
                    .iter()
                    .map(|w| w.parse::<i64>().map_err(|_| format!("`{w}` is not an integer")))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                h.array = Some(a);
            }
            _ => return Err(format!("unknown header field `{key}`")),
        }
        Ok(())
    }
}

impl fmt::Display for OpTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
