//! Suite reports: one record per check, rendered as deterministic
//! machine-readable text. Wall-clock timings are kept in memory but excluded
//! from the default rendering so reports are byte-identical across runs.

use std::time::Duration;

#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub certificate: Option<String>,
    pub repro: String,
    pub wall: Duration,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub config_line: String,
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn render(&self, with_timings: bool) -> String {
        let mut out = String::new();
        out.push_str("wittconic-report v1\n");
        out.push_str(&format!("config {}\n", self.config_line));
        let mut current_suite = "";
        for r in &self.records {
            if r.suite != current_suite {
                out.push_str(&format!("suite {}\n", r.suite));
                current_suite = &r.suite;
            }
            let status = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("check {}/{} {status}", r.suite, r.name));
            if !r.detail.is_empty() {
                out.push_str(&format!(" detail={:?}", r.detail));
            }
            if let Some(cert) = &r.certificate {
                out.push_str(&format!(" certificate={cert:?}"));
            }
            if !r.passed {
                out.push_str(&format!(" repro={:?}", r.repro));
            }
            if with_timings {
                out.push_str(&format!(" wall_ms={}", r.wall.as_millis()));
            }
            out.push('\n');
        }
        let passed = self.records.iter().filter(|r| r.passed).count();
        out.push_str(&format!(
            "summary checks={} passed={} failed={}\n",
            self.records.len(),
            passed,
            self.records.len() - passed
        ));
        out.push_str(&format!(
            "result {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_render_repro_lines() {
        let report = SuiteReport {
            config_line: "a=-1 b=-1 seed=0".into(),
            records: vec![
                CheckRecord {
                    suite: "demo".into(),
                    name: "passing".into(),
                    passed: true,
                    detail: "fine".into(),
                    certificate: None,
                    repro: "wittconic verify --suite demo".into(),
                    wall: Duration::from_millis(1),
                },
                CheckRecord {
                    suite: "demo".into(),
                    name: "failing".into(),
                    passed: false,
                    detail: "broken".into(),
                    certificate: None,
                    repro: "wittconic verify --suite demo --seed 0".into(),
                    wall: Duration::from_millis(2),
                },
            ],
        };
        assert!(!report.passed());
        let text = report.render(false);
        assert!(text.contains("check demo/failing FAIL"));
        assert!(text.contains("repro=\"wittconic verify --suite demo --seed 0\""));
        assert!(!text.contains("wall_ms"));
        assert!(report.render(true).contains("wall_ms"));
        assert!(text.ends_with("result FAIL\n"));
    }
}
