use std::fmt::Write as _;

/// Output of one command: human-readable text plus the same facts as
/// `key = value` pairs for `--porcelain`.
#[derive(Default, Debug)]
pub struct Report {
    text: String,
    pairs: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn text(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
    }

    pub fn pair(&mut self, key: impl Into<String>, value: impl ToString) {
        self.pairs.push((key.into(), value.to_string()));
    }

    /// A fact shown identically in both formats.
    pub fn fact(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        let _ = writeln!(self.text, "{key} = {value}");
        self.pairs.push((key.to_string(), value));
    }

    pub fn render(&self, porcelain: bool) -> String {
        if porcelain {
            let mut out = String::new();
            for (k, v) in &self.pairs {
                let _ = writeln!(out, "{k} = {}", v.replace('\n', "\\n"));
            }
            out
        } else {
            self.text.clone()
        }
    }
}
