use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Ordered check records plus free-form notes, serialized one `key=value` record per
/// line and closed by a summary line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl Report {
    pub fn new(seed: u64) -> Self {
        Report {
            seed,
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    /// Record `ok` as pass or fail.
    pub fn assert(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.check(name, Status::from_bool(ok), detail);
    }

    pub fn extend(&mut self, other: Report) {
        self.notes.extend(other.notes);
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.notes {
            writeln!(f, "note={}", quote(n))?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "check={} status={} detail={}",
                c.name,
                c.status,
                quote(&c.detail)
            )?;
        }
        writeln!(
            f,
            "result={} checks={} failures={} seed={}",
            if self.passed() { "pass" } else { "fail" },
            self.checks.len(),
            self.failures(),
            self.seed
        )
    }
}
