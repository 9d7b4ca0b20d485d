//! Line records: `key=value` pairs joined by tabs, or one JSON object per
//! line with the same keys in the same order.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(u128),
    Text(String),
    /// Comma-separated codes.
    Codes(Vec<u64>),
    /// 0-based coset indices, printed 1-based in braces.
    Block(Vec<usize>),
    Bool(bool),
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Self::Int(v as u128)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Self::Int(v as u128)
    }
}

impl From<u128> for Value {
    fn from(v: u128) -> Self {
        Self::Int(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Self::Bool(v)
    }
}

impl From<Vec<u64>> for Value {
    fn from(v: Vec<u64>) -> Self {
        Self::Codes(v)
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl Value {
    fn plain(&self) -> String {
        match self {
            Self::Int(v) => v.to_string(),
            Self::Text(s) => s.clone(),
            Self::Codes(c) => join(c),
            Self::Block(b) => format!("{{{}}}", join(b.iter().map(|i| i + 1))),
            Self::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Self::Int(v) => v.to_string(),
            Self::Text(s) => serde_json::Value::from(s.as_str()).to_string(),
            Self::Codes(c) => format!("[{}]", join(c)),
            Self::Block(b) => format!("[{}]", join(b.iter().map(|i| i + 1))),
            Self::Bool(b) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Record(Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<Value>) {
        self.0.push((key, value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn render(&self, json: bool) -> String {
        let mut line = String::new();
        if json {
            line.push('{');
            for (i, (k, v)) in self.0.iter().enumerate() {
                let sep = if i == 0 { "" } else { "," };
                write!(line, "{sep}\"{k}\":{}", v.json()).expect("writing to a String");
            }
            line.push('}');
        } else {
            let fields: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={}", v.plain())).collect();
            line = fields.join("\t");
        }
        line
    }
}
