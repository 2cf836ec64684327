//! One line per acceptance criterion. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use ncribbon::nabla::{nabla, sign_normalize};
use ncribbon::table::{gamma_schur_table, macdonald_gamma_table};
use ncribbon::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use ncribbon::{
    qt, Basis, Composition, Flavor, LaurentPoly, NcsfElement, OperatorKind, StructuredOperator, VarFamily,
};

const SP: Flavor = Flavor::SingleParam;
const MV: Flavor = Flavor::Multivariate;

fn c(s: &str) -> Composition {
    Composition::parse_label(s).unwrap()
}

fn el(s: &str) -> NcsfElement {
    NcsfElement::parse(s).unwrap()
}

struct Outcome {
    problems: Vec<String>,
    elapsed: Duration,
    budget: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.problems.is_empty() && self.elapsed <= self.budget
    }
}

fn timed(budget: Duration, f: impl FnOnce(&mut Vec<String>)) -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    f(&mut problems);
    Outcome { problems, elapsed: start.elapsed(), budget }
}

fn expect(problems: &mut Vec<String>, name: &str, ok: bool) {
    if !ok {
        problems.push(name.to_string());
    }
}

fn worked_examples(p: &mut Vec<String>) {
    expect(
        p,
        "H_121(A;t)",
        qt::hall_littlewood(&c("121"), SP).unwrap() == el("R_{121} + t R_{31} + t^3 R_{13} + t^4 R_4"),
    );
    expect(
        p,
        "~H_31(A;q,t)",
        qt::modified_macdonald(&c("31"), SP).unwrap()
            == el("R_4 + q^3 R_{13} + q^2 R_{22} + q^5 R_{112} + t^3 R_{31} + q^3t^3 R_{121} \
                   + q^2t^3 R_{211} + q^5t^3 R_{1111}"),
    );

    let op = StructuredOperator::build(OperatorKind::ModifiedMacdonaldFromRibbon { n: 3 }, VarFamily::TwoParam)
        .unwrap();
    let rows = [
        ["1", "q^2", "q", "q^3"],
        ["1", "t", "q", "qt"],
        ["1", "q^2", "t^2", "q^2t^2"],
        ["1", "t", "t^2", "t^3"],
    ];
    let cols = op.columns().unwrap();
    let matrix_ok = rows.iter().enumerate().all(|(r, row)| {
        row.iter()
            .enumerate()
            .all(|(k, s)| cols[k][r] == LaurentPoly::parse(s, VarFamily::TwoParam).unwrap())
    });
    expect(p, "n = 3 modified Macdonald matrix", matrix_ok);

    let r131 = qt::gamma_schur(&c("131"), &c("1121"), SP).unwrap();
    expect(p, "R^(131)_1121", r131 == el("R_{1121} + t R_{221} + t^4 R_{113} + t^5 R_{23}"));

    let r221 = qt::gamma_schur(&c("221"), &c("1121"), SP).unwrap();
    let to_41 = qt::branch(&c("221"), &c("41"), &c("1121"), SP).unwrap();
    let to_23 = qt::branch(&c("221"), &c("23"), &c("1121"), SP).unwrap();
    expect(p, "branching to (41)", to_41 == el("R^{(41)}_{1121} + t^2 R^{(41)}_{131}"));
    expect(p, "branching to (23)", to_23 == el("R^{(23)}_{1121} + t^4 R^{(23)}_{113}"));
    expect(p, "branchings expand to R^(221)_1121", qt::to_ribbon(&to_41).unwrap() == r221 && qt::to_ribbon(&to_23).unwrap() == r221);
    let printed_41 = el("R^{(41)}_{1121} + t^2 R^{(41)}_{221}");
    expect(p, "printed (41) branching with index (221) is false", qt::to_ribbon(&printed_41).unwrap() != r221);

    let nr = nabla(&NcsfElement::ribbon(c("121"))).unwrap();
    let expected = el("-q^2t^2 R_{22} - (q^3t^2 + q^2t^5) R_{211} - (q^5t^2 + q^2t^3) R_{112} \
                       - (q^6t^2 + q^5t^5 + q^3t^3 + q^2t^6) R_{1111}");
    expect(p, "nabla R_121", nr == expected);
    expect(p, "nabla R_121 has sign -1", sign_normalize(&nr).unwrap().0 == -1);
    let printed = el("-q^2t^2 R_{22} - (q^3t^3 + q^2t^5) R_{211} - (q^5t^2 + q^2t^3) R_{112} \
                      - (q^6t^2 + q^5t^5 + q^3t^3 + q^2t^6) R_{1111}");
    expect(p, "printed nabla R_121 with q^3t^3 is false", nr != printed);

    let mhl = NcsfElement::basis_element(c("121"), Basis::ModifiedHallLittlewood, VarFamily::TwoParam).unwrap();
    expect(
        p,
        "nabla ~H_121(A;t)",
        nabla(&mhl).unwrap() == el("-q^2t^6 R_{22} - q^2t^9 R_{211} - q^2t^7 R_{112} - q^2t^{10} R_{1111}"),
    );

    expect(
        p,
        "H_121(A;t_1,t_2,t_3)",
        qt::hall_littlewood(&c("121"), MV).unwrap() == el("R_{121} + t_1 R_{31} + t_3 R_{13} + t_1t_3 R_4"),
    );
    expect(
        p,
        "~H_31(A;q_*,t_*)",
        qt::modified_macdonald(&c("31"), MV).unwrap()
            == el("R_4 + q_3 R_{13} + q_2 R_{22} + q_2q_3 R_{112} + t_3 R_{31} + q_3t_3 R_{121} \
                   + q_2t_3 R_{211} + q_2q_3t_3 R_{1111}"),
    );
}

fn weight_four_tables(p: &mut Vec<String>) {
    let gamma = [
        ("31", include_str!("golden/gamma_schur_31.txt")),
        ("22", include_str!("golden/gamma_schur_22.txt")),
        ("13", include_str!("golden/gamma_schur_13.txt")),
        ("112", include_str!("golden/gamma_schur_112.txt")),
        ("121", include_str!("golden/gamma_schur_121.txt")),
        ("211", include_str!("golden/gamma_schur_211.txt")),
    ];
    for (g, golden) in gamma {
        let t = gamma_schur_table(&c(g)).unwrap().render_text();
        expect(p, &format!("({g})-Schur table"), t == golden);
    }
    let macdonald = [
        ("31", include_str!("golden/macdonald_31.txt")),
        ("22", include_str!("golden/macdonald_22.txt")),
        ("13", include_str!("golden/macdonald_13.txt")),
    ];
    for (g, golden) in macdonald {
        let t = macdonald_gamma_table(&c(g)).unwrap().render_text();
        expect(p, &format!("H|_({g}) table"), t == golden);
    }
}

fn suites(p: &mut Vec<String>, list: &[Suite], config: &VerifyConfig) {
    for &suite in list {
        let report: SuiteReport = run_suite(suite, config);
        for check in report.checks.iter().filter(|c| !c.passed()) {
            p.push(format!(
                "{suite}: {} ({} of {} cases failed)",
                check.name, check.failures, check.cases
            ));
        }
    }
}

fn full_sweep(p: &mut Vec<String>) {
    let op = StructuredOperator::build(OperatorKind::ModifiedMacdonaldFromRibbon { n: 12 }, VarFamily::TwoParam)
        .unwrap();
    let cols = op.columns().unwrap();
    // Column j of the matrix is ~H_α for the α of rank j: every entry is a
    // single monomial.
    let ok = cols.len() == 1 << 11 && cols.iter().all(|col| col.iter().all(LaurentPoly::is_positive_monomial));
    expect(p, "n = 12 full basis sweep", ok);
}

type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn main() {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("worked examples", Box::new(move || timed(secs(1), worked_examples))),
        ("weight 4 tables", Box::new(move || timed(secs(1), weight_four_tables))),
        (
            "identity suites, exhaustive to degree 6 and random to degree 8",
            Box::new(move || {
                let config = VerifyConfig { exhaustive_degree: 6, random_degree: 8, samples: 1000, seed: 2024 };
                let list = [Suite::Basis, Suite::Branching, Suite::MacdonaldPositivity, Suite::Omega, Suite::Lemmas];
                timed(secs(120), |p| suites(p, &list, &config))
            }),
        ),
        (
            "nabla suite to degree 7",
            Box::new(move || timed(secs(120), |p| suites(p, &[Suite::Nabla], &VerifyConfig::exhaustive(7)))),
        ),
        (
            "structured operators against dense Kronecker products",
            Box::new(move || {
                timed(secs(60), |p| {
                    let failures = common::structured_vs_dense(200, 7);
                    expect(p, &format!("dense comparison ({failures} mismatches)"), failures == 0);
                    let start = Instant::now();
                    full_sweep(p);
                    let sweep = start.elapsed();
                    expect(p, &format!("n = 12 sweep took {sweep:.2?}"), sweep <= secs(30));
                })
            }),
        ),
        (
            "specialization coherence to degree 7",
            Box::new(move || {
                timed(secs(300), |p| {
                    suites(p, &[Suite::Specializations, Suite::Multivariate], &VerifyConfig::exhaustive(7))
                })
            }),
        ),
    ];

    let mut all = true;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = run();
        let status = if outcome.passed() { "PASS" } else { "FAIL" };
        all &= outcome.passed();
        println!("criterion {}: {status}  {name} [{:.2?}, budget {:?}]", k + 1, outcome.elapsed, outcome.budget);
        for problem in &outcome.problems {
            println!("    failed: {problem}");
        }
    }
    if !all {
        std::process::exit(1);
    }
}
