//! Run reports: key-value lines followed by certificate blocks.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateBlock {
    pub name: String,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub fingerprint: String,
    pub result: String,
    pub optimal: Option<u64>,
    pub method: Option<String>,
    pub budget: u64,
    pub time_ms: u128,
    /// Extra `key=value` lines in emission order.
    pub fields: Vec<(String, String)>,
    pub certificates: Vec<CertificateBlock>,
}

impl RunReport {
    pub fn new(command: String, fingerprint: String, result: impl Into<String>) -> Self {
        Self {
            command,
            fingerprint,
            result: result.into(),
            optimal: None,
            method: None,
            budget: defcover::budget::budget(),
            time_ms: 0,
            fields: Vec::new(),
            certificates: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn certificate(&mut self, name: &str, text: &str) {
        self.certificates.push(CertificateBlock {
            name: name.to_string(),
            lines: text.lines().map(str::to_string).collect(),
        });
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: &str| {
            s.push_str(k);
            s.push('=');
            s.push_str(v);
            s.push('\n');
        };
        kv("command", &self.command);
        kv("fingerprint", &self.fingerprint);
        kv("result", &self.result);
        kv("optimal", &self.optimal.map_or("none".into(), |o| o.to_string()));
        kv("method", self.method.as_deref().unwrap_or("none"));
        kv("budget", &self.budget.to_string());
        for (k, v) in &self.fields {
            kv(k, v);
        }
        kv("time_ms", &self.time_ms.to_string());
        for c in &self.certificates {
            s.push_str("--- certificate ");
            s.push_str(&c.name);
            s.push('\n');
            for line in &c.lines {
                s.push_str(line);
                s.push('\n');
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Hex SHA-256 of the concatenated parts, each terminated by a newline.
pub fn fingerprint(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update(b"\n");
    }
    format!("{:x}", h.finalize())
}

/// Drops the timing line so two reports can be compared byte for byte.
pub fn without_timing(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.starts_with("time_ms=") && !l.trim_start().starts_with("\"time_ms\""))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = RunReport::new("solve".into(), "abc".into(), "yes");
        r.optimal = Some(3);
        r.budget = 10;
        r.time_ms = 7;
        r.certificate("defense", "v 1\nv 2\n");
        assert_eq!(
            r.to_text(),
            "command=solve\nfingerprint=abc\nresult=yes\noptimal=3\nmethod=none\nbudget=10\n\
             time_ms=7\n--- certificate defense\nv 1\nv 2\n"
        );
        assert_eq!(without_timing(&r.to_text()).matches("time_ms").count(), 0);
    }

    #[test]
    fn fingerprint_is_stable() {
        assert_eq!(fingerprint(&["a", "b"]), fingerprint(&["a", "b"]));
        assert_ne!(fingerprint(&["ab"]), fingerprint(&["a", "b"]));
        assert_eq!(fingerprint(&[]).len(), 64);
    }
}
