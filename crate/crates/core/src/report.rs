//! Versioned JSON envelopes for reports written by the command-line tool.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    pub report: &'a T,
}

/// Pretty JSON of `{"schema_version", "kind", "report"}` with a trailing newline.
pub fn envelope<T: Serialize>(kind: &str, report: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema_version: SCHEMA_VERSION, kind, report })
        .expect("reports serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_is_stable() {
        let a = envelope("demo", &vec![1, 2]);
        assert_eq!(a, envelope("demo", &vec![1, 2]));
        assert!(a.starts_with("{\n  \"schema_version\": 1,\n  \"kind\": \"demo\""));
    }
}
