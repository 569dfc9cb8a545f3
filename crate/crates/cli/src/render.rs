//! Output plumbing and markdown helpers.

use serde::Serialize;

use hypalg_core::series::VerificationReport;

pub trait Report: Serialize {
    fn pass(&self) -> bool;
    fn markdown(&self) -> String;
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n|{}\n", headers.join(" | "), "---|".repeat(headers.len()));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    out
}

pub fn vector<T: std::fmt::Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

pub fn verification_line(name: &str, r: &VerificationReport) -> String {
    let first = r
        .residuals
        .first()
        .map(|x| format!("; first residual {} at {:?} = {}", x.operator, x.offset, x.value))
        .unwrap_or_default();
    format!(
        "- {name}: {} ({} checks, {} residuals{first})\n",
        verdict(r.pass),
        r.checks,
        r.residuals.len()
    )
}

pub fn p_table(r: &hypalg_core::factorial::PIntegralityReport) -> String {
    let rows: Vec<Vec<String>> = r
        .primes
        .iter()
        .map(|(p, v)| {
            let off = v
                .offending
                .as_ref()
                .map_or("-".to_string(), |t| format!("{} at {}", t.coefficient, vector(&t.offset)));
            vec![p.to_string(), v.max_valuation.to_string(), off]
        })
        .collect();
    table(&["p", "max denominator valuation", "first offending term"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markdown_table() {
        let t = table(&["a", "b"], &[vec!["1".into(), "2".into()]]);
        assert_eq!(t, "| a | b |\n|---|---|\n| 1 | 2 |\n");
        assert_eq!(vector(&[1, -2]), "(1, -2)");
    }
}
