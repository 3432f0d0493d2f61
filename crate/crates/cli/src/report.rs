use std::fmt::Write as _;

use operad_forge::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub checked: Option<usize>,
    /// The statement the verdict tests.
    pub backing: &'static str,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
enum Item {
    Fact(String, String),
    Table(Table),
    Verdict(Verdict),
    Listing(String, Vec<String>),
}

/// Everything a command prints. Rendering is a pure function of the
/// contents, which are themselves computed deterministically.
#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    digest: String,
    items: Vec<Item>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}

impl Report {
    pub fn new(command: String, digest: String) -> Self {
        Report { command, digest, items: Vec::new() }
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.items.push(Item::Fact(key.into(), value.to_string()));
    }

    pub fn table(&mut self, t: Table) {
        self.items.push(Item::Table(t));
    }

    pub fn listing(&mut self, name: &str, lines: Vec<String>) {
        self.items.push(Item::Listing(name.into(), lines));
    }

    pub fn verdict(&mut self, name: &str, pass: bool, backing: &'static str, witness: Option<String>) {
        self.items.push(Item::Verdict(Verdict { name: name.into(), pass, checked: None, backing, witness }));
    }

    pub fn check(&mut self, name: &str, c: &Check, backing: &'static str) {
        self.items.push(Item::Verdict(Verdict {
            name: name.into(),
            pass: c.passed(),
            checked: Some(c.checked),
            backing,
            witness: c.witness.clone(),
        }));
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.items.iter().filter_map(|i| match i {
            Item::Verdict(v) => Some(v),
            _ => None,
        })
    }

    pub fn passed(&self) -> bool {
        self.verdicts().all(|v| v.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Records => self.render_records(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "operad-forge {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "input: sha256:{}", self.digest);
        for item in &self.items {
            match item {
                Item::Fact(k, v) => {
                    let _ = writeln!(s, "{k}: {v}");
                }
                Item::Table(t) => {
                    let widths: Vec<usize> = (0..t.columns.len())
                        .map(|c| t.rows.iter().map(|r| r[c].chars().count()).chain([t.columns[c].chars().count()]).max().unwrap_or(0))
                        .collect();
                    let line = |cells: &[String]| -> String {
                        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                        format!("  {}", padded.join("  ")).trim_end().to_string()
                    };
                    let _ = writeln!(s, "\n[{}]", t.name);
                    let _ = writeln!(s, "{}", line(&t.columns));
                    for r in &t.rows {
                        let _ = writeln!(s, "{}", line(r));
                    }
                }
                Item::Listing(name, lines) => {
                    let _ = writeln!(s, "\n[{name}]");
                    for l in lines {
                        let _ = writeln!(s, "  {l}");
                    }
                }
                Item::Verdict(v) => {
                    let checked = v.checked.map(|c| format!(" ({c} checked)")).unwrap_or_default();
                    let _ = writeln!(s, "{} {}{checked}; backing: {}", if v.pass { "PASS" } else { "FAIL" }, v.name, v.backing);
                    if let Some(w) = &v.witness {
                        let _ = writeln!(s, "  witness: {w}");
                    }
                }
            }
        }
        let _ = writeln!(s, "status: {}", if self.passed() { "pass" } else { "fail" });
        s
    }

    fn render_records(&self) -> String {
        let mut s = String::new();
        let mut record = |fields: &[(&str, &str)]| {
            let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", escape(v))).collect();
            let _ = writeln!(s, "{}", parts.join("\t"));
        };
        record(&[
            ("record", "header"),
            ("version", env!("CARGO_PKG_VERSION")),
            ("command", &self.command),
            ("sha256", &self.digest),
        ]);
        for item in &self.items {
            match item {
                Item::Fact(k, v) => record(&[("record", "fact"), ("key", k), ("value", v)]),
                Item::Table(t) => {
                    for r in &t.rows {
                        let mut fields = vec![("record", "row"), ("table", t.name.as_str())];
                        fields.extend(t.columns.iter().map(String::as_str).zip(r.iter().map(String::as_str)));
                        record(&fields);
                    }
                }
                Item::Listing(name, lines) => {
                    for l in lines {
                        record(&[("record", "line"), ("listing", name), ("text", l)]);
                    }
                }
                Item::Verdict(v) => {
                    let checked = v.checked.map(|c| c.to_string()).unwrap_or_default();
                    let mut fields = vec![
                        ("record", "verdict"),
                        ("name", v.name.as_str()),
                        ("result", if v.pass { "pass" } else { "fail" }),
                        ("checked", checked.as_str()),
                        ("backing", v.backing),
                    ];
                    if let Some(w) = &v.witness {
                        fields.push(("witness", w));
                    }
                    record(&fields);
                }
            }
        }
        record(&[("record", "status"), ("result", if self.passed() { "pass" } else { "fail" })]);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats_carry_the_verdicts() {
        let mut r = Report::new("pbw-verify --max-deg 2".into(), "00".into());
        let mut t = Table::new("degrees", &["n", "rank"]);
        t.row(vec!["0".into(), "1".into()]);
        t.row(vec!["1".into(), "3".into()]);
        r.table(t);
        r.verdict("iso", false, "PBW theorem", Some("a\tb".into()));
        assert!(!r.passed());
        let text = r.render(Format::Text);
        assert!(text.contains("  n  rank\n  0     1\n"), "{text}");
        assert!(text.ends_with("status: fail\n"));
        let records = r.render(Format::Records);
        assert!(records.contains("record=row\ttable=degrees\tn=1\trank=3\n"));
        assert!(records.contains("witness=a\\tb"));
    }
}
