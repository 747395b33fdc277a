use std::io::Write;

use serde_json::{Map, Value};

/// Structured progress on stderr, one JSON object per line.
pub struct Progress {
    command: &'static str,
    enabled: bool,
}

impl Progress {
    pub fn new(command: &'static str, enabled: bool) -> Self {
        Progress { command, enabled }
    }

    pub fn event(&mut self, kind: &str, fields: &[(&str, Value)]) {
        if !self.enabled {
            return;
        }
        let mut obj = Map::new();
        obj.insert("event".into(), kind.into());
        obj.insert("command".into(), self.command.into());
        for (k, v) in fields {
            obj.insert((*k).into(), v.clone());
        }
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "{}", Value::Object(obj));
    }
}
