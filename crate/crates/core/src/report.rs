use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
            Status::Error => "error",
        }
    }

    /// The worse of two statuses: error > fail > unknown > pass.
    pub fn and(self, other: Status) -> Status {
        fn rank(s: Status) -> u8 {
            match s {
                Status::Pass => 0,
                Status::Unknown => 1,
                Status::Fail => 2,
                Status::Error => 3,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

/// Outcome of a check together with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub status: Status,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn new(status: Status) -> Report {
        Report {
            status,
            witnesses: Vec::new(),
        }
    }

    pub fn pass() -> Report {
        Report::new(Status::Pass)
    }

    pub fn fail(name: impl Into<String>, value: impl fmt::Display) -> Report {
        Report::new(Status::Fail).with(name, value)
    }

    pub fn with(mut self, name: impl Into<String>, value: impl fmt::Display) -> Report {
        self.witnesses.push(Witness {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn push(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.witnesses.push(Witness {
            name: name.into(),
            value: value.to_string(),
        });
    }

    /// Records a sub-check: the status degrades on failure and the witness is kept.
    pub fn check(&mut self, ok: bool, name: impl Into<String>, value: impl fmt::Display) {
        if !ok {
            self.status = self.status.and(Status::Fail);
        }
        self.push(name, value);
    }

    pub fn merge(&mut self, other: Report) {
        self.status = self.status.and(other.status);
        self.witnesses.extend(other.witnesses);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn witness(&self, name: &str) -> Option<&str> {
        self.witnesses
            .iter()
            .find(|w| w.name == name)
            .map(|w| w.value.as_str())
    }
}
