//! Deterministic JSON reports and exit-code policy.

use serde::Serialize;

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub target: String,
    pub lemma: Option<String>,
    pub backend: String,
    pub checked: usize,
    pub failed: usize,
    pub skipped: usize,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, target: &str) -> Report {
        Report {
            command: command.to_string(),
            target: target.to_string(),
            lemma: None,
            backend: String::new(),
            checked: 0,
            failed: 0,
            skipped: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < 50 {
                self.counterexamples.push(counterexample());
            }
        }
    }

    pub fn skip(&mut self, why: &str) {
        self.skipped += 1;
        if !self.notes.iter().any(|n| n == why) {
            self.notes.push(why.to_string());
        }
    }

    pub fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    /// 0 pass, 1 counterexample, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else if self.skipped > 0 && self.checked == 0 {
            2
        } else {
            0
        }
    }

    pub fn emit(&self, out: Option<&std::path::Path>) {
        let text = serde_json::to_string_pretty(self).expect("report serialization");
        match out {
            Some(path) => std::fs::write(path, &text).expect("writing report"),
            None => println!("{text}"),
        }
        eprintln!(
            "{} {}: checked {} failed {} skipped {}",
            self.command,
            self.lemma.as_deref().unwrap_or(&self.target),
            self.checked,
            self.failed,
            self.skipped
        );
    }
}
