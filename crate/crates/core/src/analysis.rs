//! Energy sweeps, the reference energy table, and classification against
//! the complete graph on the same number of vertices.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::{alpha_energy, AlphaValue};
use crate::error::Result;
use crate::graph::{complete, complete_bipartite, cycle, Graph};
use crate::ops;

/// Absolute tolerance for energy equality.
pub const DEFAULT_TOL: f64 = 1e-6;

/// α = 0, 0.1, …, 0.9.
pub fn table_alphas() -> Vec<AlphaValue> {
    (0..10)
        .map(|k| AlphaValue::from_ratio(k, 10).expect("grid value in range"))
        .collect()
}

/// ε_α(K_n) = (1−α)·2(n−1).
pub fn reference_energy(n: usize, a: &AlphaValue) -> Result<f64> {
    a.check_energy()?;
    Ok((1.0 - a.numeric()) * 2.0 * n.saturating_sub(1) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Borderenergetic,
    Hyperenergetic,
    Neither,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Borderenergetic => "borderenergetic",
            Verdict::Hyperenergetic => "hyperenergetic",
            Verdict::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub graph_id: String,
    pub alpha: f64,
    pub energy: f64,
    pub reference_energy: f64,
    pub verdict: Verdict,
    pub equal_partners: Vec<String>,
}

/// Equality within `tol` wins over "greater than".
pub fn verdict_for(energy: f64, reference: f64, tol: f64) -> Verdict {
    if (energy - reference).abs() <= tol {
        Verdict::Borderenergetic
    } else if energy > reference + tol {
        Verdict::Hyperenergetic
    } else {
        Verdict::Neither
    }
}

pub fn classify(
    graph_id: &str,
    g: &Graph,
    a: &AlphaValue,
    peers: &[(String, Graph)],
    tol: f64,
) -> Result<ClassificationResult> {
    let energy = alpha_energy(g, a)?.energy;
    let reference = reference_energy(g.p(), a)?;
    let peer_energies: Vec<f64> = peers
        .par_iter()
        .map(|(_, h)| alpha_energy(h, a).map(|r| r.energy))
        .collect::<Result<_>>()?;
    let equal_partners = peers
        .iter()
        .zip(&peer_energies)
        .filter(|(_, e)| (*e - energy).abs() <= tol)
        .map(|((id, _), _)| id.clone())
        .collect();
    Ok(ClassificationResult {
        graph_id: graph_id.to_string(),
        alpha: a.numeric(),
        energy,
        reference_energy: reference,
        verdict: verdict_for(energy, reference, tol),
        equal_partners,
    })
}

/// Energies of several graphs over a common α grid, at full precision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<String>,
    pub alphas: Vec<f64>,
    pub cells: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn compute(entries: &[(String, Graph)], alphas: &[AlphaValue]) -> Result<Self> {
        let cells = entries
            .par_iter()
            .map(|(_, g)| {
                alphas
                    .par_iter()
                    .map(|a| alpha_energy(g, a).map(|r| r.energy))
                    .collect()
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        Ok(SweepTable {
            rows: entries.iter().map(|(id, _)| id.clone()).collect(),
            alphas: alphas.iter().map(AlphaValue::numeric).collect(),
            cells,
        })
    }

    pub fn cell(&self, row: &str, alpha: f64) -> Option<f64> {
        let i = self.rows.iter().position(|r| r == row)?;
        let j = self.alphas.iter().position(|a| (a - alpha).abs() < 1e-12)?;
        Some(self.cells[i][j])
    }

    /// Header `graph,alpha_<a>,...`, then one line per row with 4-decimal
    /// cells rounded half away from zero.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("graph");
        for a in &self.alphas {
            let _ = write!(out, ",alpha_{}", alpha_label(*a));
        }
        out.push('\n');
        for (id, row) in self.rows.iter().zip(&self.cells) {
            out.push_str(&csv_field(id));
            for v in row {
                let _ = write!(out, ",{}", round4(*v));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serializes")
    }
}

/// `0.3` → "0.3", `0` → "0.0", `0.25` → "0.25".
pub fn alpha_label(a: f64) -> String {
    let s = format!("{a}");
    if s.contains('.') {
        s
    } else {
        format!("{a:.1}")
    }
}

/// Fixed 4-decimal display, half away from zero.
pub fn round4(v: f64) -> String {
    let r = (v * 1e4).round() / 1e4 + 0.0;
    format!("{r:.4}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The graph families of the reference table, in table order: for each base
/// the complete graph of matching order, then Spl, Λ, D₂[·], Ebd, D₂(·), D(·).
/// K₁₂ serves both the C₆ and K₃,₃ blocks, so it is listed once.
pub fn table1_graphs() -> Result<Vec<(String, Graph)>> {
    let bases = [
        ("C4", cycle(4)?, Some(8)),
        ("C5", cycle(5)?, Some(10)),
        ("C6", cycle(6)?, Some(12)),
        ("K33", complete_bipartite(3, 3)?, None),
    ];
    let mut out = Vec::with_capacity(27);
    for (name, g, complete_order) in bases {
        if let Some(n) = complete_order {
            out.push((format!("K{n}"), complete(n)?));
        }
        out.push((format!("Spl({name})"), ops::splitting_graph(&g, 1)?));
        out.push((format!("Lambda({name})"), ops::closed_splitting_graph(&g)?));
        out.push((format!("D2[{name}]"), ops::closed_shadow_graph(&g)?));
        out.push((format!("Ebd({name})"), ops::ebd_graph(&g)?));
        out.push((format!("D2({name})"), ops::shadow_graph(&g, 2)?));
        out.push((format!("D({name})"), ops::duplicate_graph(&g, 1)?));
    }
    Ok(out)
}

pub fn table1() -> Result<SweepTable> {
    SweepTable::compute(&table1_graphs()?, &table_alphas())
}

/// One checked claim about the reference table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub id: &'static str,
    pub claim: String,
    pub pass: bool,
    /// Comparisons that failed, or a short summary when all held.
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_threshold: Option<Vec<(String, Option<f64>)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservationReport {
    pub tol: f64,
    pub observations: Vec<Observation>,
}

impl ObservationReport {
    pub fn all_pass(&self) -> bool {
        self.observations.iter().all(|o| o.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.observations {
            let _ = writeln!(
                out,
                "({}) {}: {}",
                o.id,
                if o.pass { "PASS" } else { "FAIL" },
                o.claim
            );
            for d in &o.details {
                let _ = writeln!(out, "    {d}");
            }
            for (id, t) in o.observed_threshold.iter().flatten() {
                match t {
                    Some(t) => {
                        let _ = writeln!(out, "    {id} hyperenergetic from α = {t}");
                    }
                    None => {
                        let _ = writeln!(out, "    {id} not hyperenergetic at α = 0.9");
                    }
                }
            }
        }
        out
    }
}

struct Energies {
    alphas: Vec<AlphaValue>,
}

impl Energies {
    fn of(&self, g: &Graph) -> Result<Vec<f64>> {
        self.alphas
            .par_iter()
            .map(|a| alpha_energy(g, a).map(|r| r.energy))
            .collect()
    }

    fn reference(&self, n: usize) -> Result<Vec<f64>> {
        self.alphas.iter().map(|a| reference_energy(n, a)).collect()
    }
}

fn compare_rows(
    label_a: &str,
    a: &[f64],
    label_b: &str,
    b: &[f64],
    alphas: &[AlphaValue],
    tol: f64,
    failures: &mut Vec<String>,
) {
    for ((x, y), al) in a.iter().zip(b).zip(alphas) {
        if (x - y).abs() > tol {
            failures.push(format!(
                "α={}: {label_a}={x:.6} vs {label_b}={y:.6}",
                al.numeric()
            ));
        }
    }
}

fn finish(id: &'static str, claim: &str, failures: Vec<String>, summary: String) -> Observation {
    let pass = failures.is_empty();
    Observation {
        id,
        claim: claim.to_string(),
        pass,
        details: if pass { vec![summary] } else { failures },
        observed_threshold: None,
    }
}

/// Machine-checks the six observations drawn from the reference table over
/// α = 0, 0.1, …, 0.9.
pub fn observations_report(tol: f64) -> Result<ObservationReport> {
    let ctx = Energies {
        alphas: table_alphas(),
    };
    let alphas = &ctx.alphas;
    let c4 = cycle(4)?;
    let c6 = cycle(6)?;
    let k33 = complete_bipartite(3, 3)?;
    let bases = [
        ("C4", c4.clone()),
        ("C5", cycle(5)?),
        ("C6", c6.clone()),
        ("K33", k33.clone()),
    ];
    let mut observations = Vec::with_capacity(6);

    // (i)
    let mut failures = Vec::new();
    for (name, g) in &bases {
        let s = ctx.of(&ops::shadow_graph(g, 2)?)?;
        let d = ctx.of(&ops::duplicate_graph(g, 1)?)?;
        compare_rows(
            &format!("D2({name})"),
            &s,
            &format!("D({name})"),
            &d,
            alphas,
            tol,
            &mut failures,
        );
    }
    observations.push(finish(
        "i",
        "D2(G) and D(G) are equienergetic for G in {C4, C5, C6, K33} and every α",
        failures,
        "40 comparisons equal".into(),
    ));

    // (ii)
    let mut failures = Vec::new();
    let e = ctx.of(&ops::closed_shadow_graph(&c4)?)?;
    compare_rows(
        "D2[C4]",
        &e,
        "K8",
        &ctx.reference(8)?,
        alphas,
        tol,
        &mut failures,
    );
    observations.push(finish(
        "ii",
        "D2[C4] is borderenergetic for every α",
        failures,
        "equal to ε_α(K8) at all 10 α".into(),
    ));

    // (iii)
    let mut failures = Vec::new();
    let e6 = ctx.of(&ops::closed_shadow_graph(&c6)?)?;
    let e33 = ctx.of(&ops::closed_shadow_graph(&k33)?)?;
    let k12 = ctx.reference(12)?;
    compare_rows("D2[C6]", &e6, "D2[K33]", &e33, alphas, tol, &mut failures);
    compare_rows("D2[C6]", &e6, "K12", &k12, alphas, tol, &mut failures);
    compare_rows("D2[K33]", &e33, "K12", &k12, alphas, tol, &mut failures);
    observations.push(finish(
        "iii",
        "D2[C6] and D2[K33] are equienergetic and both borderenergetic",
        failures,
        "30 comparisons equal".into(),
    ));

    // (iv)
    let mut failures = Vec::new();
    let ebd = ctx.of(&ops::ebd_graph(&c6)?)?;
    let sh = ctx.of(&ops::shadow_graph(&c6, 2)?)?;
    let du = ctx.of(&ops::duplicate_graph(&c6, 1)?)?;
    compare_rows("Ebd(C6)", &ebd, "D2(C6)", &sh, alphas, tol, &mut failures);
    compare_rows("Ebd(C6)", &ebd, "D(C6)", &du, alphas, tol, &mut failures);
    observations.push(finish(
        "iv",
        "Ebd(C6) is equienergetic with D2(C6) and D(C6)",
        failures,
        "20 comparisons equal".into(),
    ));

    // (v)
    let mut failures = Vec::new();
    for p in 2..=5 {
        let e = ctx.of(&ops::closed_shadow_graph(&complete_bipartite(p, p)?)?)?;
        compare_rows(
            &format!("D2[K{p}{p}]"),
            &e,
            &format!("K{}", 4 * p),
            &ctx.reference(4 * p)?,
            alphas,
            tol,
            &mut failures,
        );
    }
    observations.push(finish(
        "v",
        "D2[K_{p,p}] is borderenergetic for p = 2..5 and every α",
        failures,
        "energy (1−α)(8p−2) in all 40 cases".into(),
    ));

    // (vi)
    observations.push(splitting_hyperenergetic(&ctx, &bases, tol)?);

    Ok(ObservationReport { tol, observations })
}

/// Spl(G) against K_{2p} for α ≥ 0.3, plus the smallest grid α from which
/// Spl(G) stays hyperenergetic.
fn splitting_hyperenergetic(
    ctx: &Energies,
    bases: &[(&str, Graph)],
    tol: f64,
) -> Result<Observation> {
    let mut failures = Vec::new();
    let mut thresholds = Vec::new();
    for (name, g) in bases {
        let spl = ops::splitting_graph(g, 1)?;
        let e = ctx.of(&spl)?;
        let reference = ctx.reference(spl.p())?;
        let hyper: Vec<bool> = e
            .iter()
            .zip(&reference)
            .map(|(x, r)| verdict_for(*x, *r, tol) == Verdict::Hyperenergetic)
            .collect();
        for ((a, h), (x, r)) in ctx.alphas.iter().zip(&hyper).zip(e.iter().zip(&reference)) {
            if a.numeric() >= 0.3 - 1e-12 && !h {
                failures.push(format!(
                    "α={}: Spl({name})={x:.6} not above K{}={r:.6}",
                    a.numeric(),
                    spl.p()
                ));
            }
        }
        let from = (0..hyper.len()).find(|&k| hyper[k..].iter().all(|h| *h));
        thresholds.push((
            format!("Spl({name})"),
            from.map(|k| ctx.alphas[k].numeric()),
        ));
    }
    let mut obs = finish(
        "vi",
        "Spl(G) is hyperenergetic for α ≥ 0.3, checked for G in {C4, C5, C6, K33}",
        failures,
        "all 28 comparisons above the reference".into(),
    );
    obs.observed_threshold = Some(thresholds);
    Ok(obs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(x: f64) -> AlphaValue {
        AlphaValue::new(x).unwrap()
    }

    #[test]
    fn reference_energy_examples() {
        assert_eq!(reference_energy(8, &al(0.0)).unwrap(), 14.0);
        assert!((reference_energy(12, &al(0.9)).unwrap() - 2.2).abs() < 1e-12);
        assert_eq!(reference_energy(1, &al(0.5)).unwrap(), 0.0);
        assert!(reference_energy(4, &al(1.0)).is_err());
        for n in [2, 5, 9] {
            for x in [0.0, 0.3, 0.8] {
                let num = alpha_energy(&complete(n).unwrap(), &al(x)).unwrap().energy;
                assert!((num - reference_energy(n, &al(x)).unwrap()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn verdict_boundaries() {
        assert_eq!(verdict_for(9.8, 9.8 + 5e-7, 1e-6), Verdict::Borderenergetic);
        assert_eq!(verdict_for(9.8 + 2e-6, 9.8, 1e-6), Verdict::Hyperenergetic);
        assert_eq!(verdict_for(9.0, 9.8, 1e-6), Verdict::Neither);
    }

    #[test]
    fn classify_examples() {
        let c4 = cycle(4).unwrap();
        let d2 = ops::closed_shadow_graph(&c4).unwrap();
        let r = classify("D2[C4]", &d2, &al(0.3), &[], DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Borderenergetic);
        assert!((r.reference_energy - 9.8).abs() < 1e-12);

        let spl = ops::splitting_graph(&c4, 1).unwrap();
        let r = classify("Spl(C4)", &spl, &al(0.3), &[], DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Neither);
        assert!((r.energy - 7.5530).abs() < 5e-5);
        let r = classify("Spl(C4)", &spl, &al(0.6), &[], DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Hyperenergetic);

        let c5 = cycle(5).unwrap();
        let sh = ops::shadow_graph(&c5, 2).unwrap();
        let du = ops::duplicate_graph(&c5, 1).unwrap();
        for x in [0.0, 0.45, 0.9] {
            let r = classify(
                "D2(C5)",
                &sh,
                &al(x),
                &[("D(C5)".into(), du.clone())],
                DEFAULT_TOL,
            )
            .unwrap();
            assert_eq!(r.equal_partners, vec!["D(C5)".to_string()]);
            let r = classify(
                "D(C5)",
                &du,
                &al(x),
                &[("D2(C5)".into(), sh.clone())],
                DEFAULT_TOL,
            )
            .unwrap();
            assert_eq!(r.equal_partners, vec!["D2(C5)".to_string()]);
        }
    }

    #[test]
    fn classification_is_scale_consistent_for_regular_graphs() {
        for g in [
            ops::ebd_graph(&cycle(5).unwrap()).unwrap(),
            ops::closed_shadow_graph(&cycle(4).unwrap()).unwrap(),
        ] {
            let v0 = classify("g", &g, &al(0.0), &[], DEFAULT_TOL)
                .unwrap()
                .verdict;
            for x in [0.2, 0.5, 0.9] {
                assert_eq!(
                    classify("g", &g, &al(x), &[], DEFAULT_TOL).unwrap().verdict,
                    v0
                );
            }
        }
    }

    #[test]
    fn rounding_and_labels() {
        assert_eq!(round4(7.0), "7.0000");
        assert_eq!(round4(-0.00001), "0.0000");
        assert_eq!(round4(13.15297), "13.1530");
        assert_eq!(round4(2.5e-5), "0.0000");
        assert_eq!(alpha_label(0.0), "0.0");
        assert_eq!(alpha_label(0.3), "0.3");
        assert_eq!(alpha_label(0.25), "0.25");
    }

    #[test]
    fn table_layout() {
        let rows = table1_graphs().unwrap();
        assert_eq!(rows.len(), 27);
        assert_eq!(rows[0].0, "K8");
        assert_eq!(rows[21].0, "Spl(K33)");
        assert_eq!(rows.iter().map(|(_, g)| g.p()).max(), Some(12));
    }

    #[test]
    fn csv_is_deterministic() {
        let entries = vec![
            ("C4".to_string(), cycle(4).unwrap()),
            ("K4".to_string(), complete(4).unwrap()),
        ];
        let alphas = [al(0.0), al(0.5)];
        let a = SweepTable::compute(&entries, &alphas).unwrap().to_csv();
        let b = SweepTable::compute(&entries, &alphas).unwrap().to_csv();
        assert_eq!(a, b);
        assert_eq!(
            a,
            "graph,alpha_0.0,alpha_0.5\nC4,4.0000,2.0000\nK4,6.0000,3.0000\n"
        );
    }
}
