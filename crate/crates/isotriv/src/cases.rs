//! Worked cases: printed witnesses `(V, W)` and the values they are known to
//! produce, recomputed and compared item by item.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::baskets::Basket;
use crate::catalog::{lookup, signature_text};
use crate::error::{Error, Result};
use crate::fixpoints::{fix_count, fix_count_rot};
use crate::genvec::GeneratingVector;
use crate::groups::FiniteGroup;
use crate::minimality::{build_fiber, contract_to_minimal, FiberConfiguration};
use crate::quotient::{points_by_stabilizer_order, stabilizer_set, weighted_point_count, QuotientSurface};
use crate::quotsing::SingularityType;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    F,
    C,
}

/// `Fix_{X,q}(h)`, or `Fix_X(h)` when `q` is `None`.
struct FixClaim {
    element: &'static str,
    side: Side,
    q: Option<u32>,
    value: u64,
}

const fn fix(element: &'static str, side: Side, q: Option<u32>, value: u64) -> FixClaim {
    FixClaim { element, side, q, value }
}

struct FiberClaim {
    /// String order along Y, which fixes the lettering.
    strings: &'static [&'static str],
    text: &'static str,
    central: (i64, i64),
}

struct CaseSpec {
    label: &'static str,
    entry: &'static str,
    v: &'static [&'static str],
    w: &'static [&'static str],
    h: [&'static str; 2],
    stabilizers: Option<usize>,
    fix: &'static [FixClaim],
    points: &'static [(u32, usize)],
    sing: &'static str,
    g_c: u32,
    k2: i64,
    fiber: Option<FiberClaim>,
    k2_min: i64,
}

use Side::{C, F};

const S3_W: [&str; 1] = ["(123)"];
const S4_W: [&str; 1] = ["(123)"];
const K5_SING: &str = "1/3(1,1) + 1/3(1,2)";
const K3_SING: &str = "2 x 1/2(1,1) + 1/3(1,1) + 1/3(1,2)";
const D_SING: &str = "2 x 1/2(1,1) + 1/4(1,1) + 1/4(1,3)";
const G_SING: &str = "2 x 1/3(1,1) + 2 x 1/3(1,2)";
const K2_FIBER: FiberClaim = FiberClaim {
    strings: &["1/2(1,1)", "1/2(1,1)", "1/3(1,1)", "1/3(1,2)"],
    text: "F = 6Y + 3A + 3B + 2C + 4D1 + 2D2",
    central: (0, -2),
};

static CASES: &[CaseSpec] = &[
    CaseSpec {
        label: "3a",
        entry: "3a",
        v: &["(12)", "(12)", "(12)", "(13)", "(123)"],
        w: &S3_W,
        h: ["(13)", "(12)"],
        stabilizers: Some(2),
        fix: &[
            fix("(123)", F, Some(1), 1),
            fix("(123)", F, Some(2), 1),
            fix("(123)", C, Some(1), 1),
            fix("(123)", C, Some(2), 1),
        ],
        points: &[(3, 4)],
        sing: K5_SING,
        g_c: 3,
        k2: 5,
        fiber: Some(FiberClaim { strings: &["1/3(1,1)", "1/3(1,2)"], text: "F = 3Y + A + 2B1 + B2", central: (1, -1) }),
        k2_min: 5,
    },
    CaseSpec {
        label: "3d",
        entry: "3d",
        v: &["x", "xy", "y^2x^2"],
        w: &["y"],
        h: ["y", "x"],
        stabilizers: None,
        fix: &[fix("y", F, Some(1), 1), fix("y", F, Some(2), 1), fix("y", C, Some(1), 2), fix("y", C, Some(2), 2)],
        points: &[(3, 8)],
        sing: K5_SING,
        g_c: 5,
        k2: 5,
        fiber: None,
        k2_min: 5,
    },
    CaseSpec {
        label: "3e",
        entry: "3e",
        v: &["x", "xy^2", "y^3", "y"],
        w: &["y^2"],
        h: ["x", "y"],
        stabilizers: None,
        fix: &[
            fix("y^2", F, Some(1), 1),
            fix("y^2", F, Some(2), 1),
            fix("y^2", C, Some(1), 2),
            fix("y^2", C, Some(2), 2),
        ],
        points: &[(3, 8)],
        sing: K5_SING,
        g_c: 5,
        k2: 5,
        fiber: None,
        k2_min: 5,
    },
    CaseSpec {
        label: "3l",
        entry: "3l",
        v: &["x", "xy^11", "y"],
        w: &["y^4"],
        h: ["y", "x"],
        stabilizers: None,
        fix: &[fix("y^4", C, Some(1), 4), fix("y^4", C, Some(2), 4)],
        points: &[(3, 16)],
        sing: K5_SING,
        g_c: 9,
        k2: 5,
        fiber: None,
        k2_min: 5,
    },
    CaseSpec {
        label: "3o",
        entry: "3o",
        v: &["(123)", "(1234)", "(1243)"],
        w: &S4_W,
        h: ["(142)", "(23)"],
        stabilizers: Some(8),
        fix: &[],
        points: &[(3, 16)],
        sing: K5_SING,
        g_c: 9,
        k2: 5,
        fiber: None,
        k2_min: 5,
    },
    CaseSpec {
        label: "3p",
        entry: "3p",
        v: &["(12)", "(24)", "(13)(24)", "(123)"],
        w: &S4_W,
        h: ["(142)", "(23)"],
        stabilizers: Some(8),
        fix: &[],
        points: &[(3, 16)],
        sing: K5_SING,
        g_c: 9,
        k2: 5,
        fiber: None,
        k2_min: 5,
    },
    CaseSpec {
        label: "3s",
        entry: "3s",
        v: &["z(14)", "(1234)", "z(132)"],
        w: &S4_W,
        h: ["z(142)", "z(23)"],
        stabilizers: None,
        fix: &[fix("(123)", C, Some(1), 2), fix("(123)", C, Some(2), 2)],
        points: &[(3, 32)],
        sing: K5_SING,
        g_c: 17,
        k2: 5,
        fiber: None,
        k2_min: 5,
    },
    CaseSpec {
        label: "3v",
        entry: "3v",
        v: &["zxz^3", "y", "xyxzxz^3"],
        w: &["y"],
        h: ["yz", "xy"],
        stabilizers: Some(32),
        fix: &[],
        points: &[(3, 64)],
        sing: K5_SING,
        g_c: 33,
        k2: 5,
        fiber: None,
        k2_min: 5,
    },
    CaseSpec {
        label: "3w",
        entry: "3w",
        v: &["(12)(34)(58)(67)", "(154)(367)", "(1247358)"],
        w: &["(154)(367)"],
        h: ["(2465837)", "(1352678)"],
        stabilizers: Some(56),
        fix: &[],
        points: &[(3, 112)],
        sing: K5_SING,
        g_c: 57,
        k2: 5,
        fiber: None,
        k2_min: 5,
    },
    CaseSpec {
        label: "2g",
        entry: "2g",
        v: &["x", "zwx", "yzw"],
        w: &["yw"],
        h: ["zw", "x"],
        stabilizers: Some(3),
        fix: &[
            fix("y", F, None, 6),
            fix("y", C, None, 4),
            fix("w", F, Some(1), 2),
            fix("w", F, Some(2), 2),
            fix("w", C, Some(1), 2),
            fix("w", C, Some(2), 2),
        ],
        points: &[(2, 24), (3, 16)],
        sing: K3_SING,
        g_c: 11,
        k2: 3,
        fiber: Some(K2_FIBER),
        k2_min: 3,
    },
    CaseSpec {
        label: "2i",
        entry: "2i",
        v: &["[[1,1],[0,-1]]", "[[0,-1],[1,-1]]", "[[-1,1],[-1,-1]]"],
        w: &["[[1,-1],[1,0]]"],
        h: ["[[-1,-1],[-1,0]]", "[[-1,0],[-1,-1]]"],
        stabilizers: Some(9),
        fix: &[
            fix("[[-1,0],[0,-1]]", F, None, 6),
            fix("[[-1,0],[0,-1]]", C, None, 8),
            fix("[[0,-1],[1,-1]]", F, Some(1), 2),
            fix("[[0,-1],[1,-1]]", F, Some(2), 2),
            fix("[[0,-1],[1,-1]]", C, Some(1), 1),
            fix("[[0,-1],[1,-1]]", C, Some(2), 1),
        ],
        points: &[(2, 48), (3, 32)],
        sing: K3_SING,
        g_c: 21,
        k2: 3,
        fiber: None,
        k2_min: 3,
    },
    CaseSpec {
        label: "2f",
        entry: "2f",
        v: &["x", "xy^7", "y"],
        w: &["y^2"],
        h: ["y", "x"],
        stabilizers: Some(3),
        fix: &[
            fix("y^4", F, None, 6),
            fix("y^4", C, None, 4),
            fix("y^2", F, Some(1), 1),
            fix("y^2", F, Some(3), 1),
            fix("y^2", C, Some(1), 2),
            fix("y^2", C, Some(3), 2),
        ],
        points: &[(2, 16), (4, 8)],
        sing: D_SING,
        g_c: 7,
        k2: 2,
        fiber: Some(FiberClaim {
            strings: &["1/2(1,1)", "1/2(1,1)", "1/4(1,1)", "1/4(1,3)"],
            text: "F = 4Y + 2A + 2B + C + 3D1 + 2D2 + D3",
            central: (0, -2),
        }),
        k2_min: 2,
    },
    CaseSpec {
        label: "2h",
        entry: "2h",
        v: &["[[0,1],[-1,-1]]", "[[0,-1],[1,-1]]", "[[-1,1],[1,1]]"],
        w: &["[[-1,1],[1,1]]"],
        h: ["[[0,1],[-1,0]]", "[[1,1],[0,1]]"],
        stabilizers: None,
        fix: &[
            fix("[[-1,1],[1,1]]", F, Some(1), 1),
            fix("[[-1,1],[1,1]]", F, Some(3), 1),
            fix("[[-1,1],[1,1]]", C, Some(1), 1),
            fix("[[-1,1],[1,1]]", C, Some(3), 1),
        ],
        points: &[(2, 24), (4, 12)],
        sing: D_SING,
        g_c: 10,
        k2: 2,
        fiber: None,
        k2_min: 2,
    },
    CaseSpec {
        label: "3u",
        entry: "3u",
        v: &["x", "x^2y^3", "y"],
        w: &["y"],
        h: ["x", "xyxy^2"],
        stabilizers: None,
        fix: &[fix("y", F, Some(1), 4), fix("y", F, Some(3), 0), fix("y", C, Some(1), 4), fix("y", C, Some(3), 0)],
        points: &[(4, 48)],
        sing: "4 x 1/4(1,1)",
        g_c: 19,
        k2: 2,
        fiber: Some(FiberClaim {
            strings: &["1/4(1,1)", "1/4(1,1)", "1/4(1,1)", "1/4(1,1)"],
            text: "F = 4Y + A + B + C + D",
            central: (-1, -1),
        }),
        k2_min: 3,
    },
    CaseSpec {
        label: "2a",
        entry: "2a",
        v: &["(12)", "(12)", "(123)", "(132)"],
        w: &S3_W,
        h: ["(13)", "(12)"],
        stabilizers: None,
        fix: &[
            fix("(123)", F, Some(1), 2),
            fix("(123)", F, Some(2), 2),
            fix("(123)", C, Some(1), 1),
            fix("(123)", C, Some(2), 1),
        ],
        points: &[(3, 8)],
        sing: G_SING,
        g_c: 3,
        k2: 2,
        fiber: Some(FiberClaim {
            strings: &["1/3(1,2)", "1/3(1,2)", "1/3(1,1)", "1/3(1,1)"],
            text: "F = 3Y + 2A1 + A2 + 2B1 + B2 + C + D",
            central: (0, -2),
        }),
        k2_min: 2,
    },
    CaseSpec {
        label: "2d",
        entry: "2d",
        v: &["y", "y^2x^3", "x"],
        w: &["y"],
        h: ["y", "x"],
        stabilizers: None,
        fix: &[fix("y", F, Some(1), 2), fix("y", F, Some(2), 2), fix("y", C, Some(1), 2), fix("y", C, Some(2), 2)],
        points: &[(3, 16)],
        sing: G_SING,
        g_c: 5,
        k2: 2,
        fiber: None,
        k2_min: 2,
    },
    CaseSpec {
        label: "2e",
        entry: "2e",
        v: &["x", "xy", "y^3", "y^2"],
        w: &["y^2"],
        h: ["x", "y"],
        stabilizers: None,
        fix: &[
            fix("y^2", F, Some(1), 2),
            fix("y^2", F, Some(2), 2),
            fix("y^2", C, Some(1), 2),
            fix("y^2", C, Some(2), 2),
        ],
        points: &[(3, 16)],
        sing: G_SING,
        g_c: 5,
        k2: 2,
        fiber: None,
        k2_min: 2,
    },
    CaseSpec {
        label: "k1-example",
        entry: "3k",
        v: &["x^2", "xy^6", "y"],
        w: &["y"],
        h: ["y", "x"],
        stabilizers: Some(6),
        fix: &[
            fix("y", F, Some(1), 1),
            fix("y", F, Some(2), 1),
            fix("y", F, Some(3), 0),
            fix("y", F, Some(4), 1),
            fix("y", F, Some(5), 0),
            fix("y", F, Some(6), 0),
            fix("y", C, Some(1), 1),
            fix("y", C, Some(2), 1),
            fix("y", C, Some(3), 0),
            fix("y", C, Some(4), 1),
            fix("y", C, Some(5), 0),
            fix("y", C, Some(6), 0),
        ],
        points: &[(7, 9)],
        sing: "1/7(1,1) + 1/7(1,2) + 1/7(1,4)",
        g_c: 10,
        k2: 1,
        fiber: Some(FiberClaim {
            strings: &["1/7(1,2)", "1/7(1,4)", "1/7(1,1)"],
            text: "F = 7Y + 4A1 + A2 + 2B1 + B2 + C",
            central: (-1, -1),
        }),
        k2_min: 3,
    },
];

/// Labels accepted by [`verify_case`].
pub fn case_labels() -> Vec<&'static str> {
    CASES.iter().map(|c| c.label).collect()
}

fn spec(label: &str) -> Result<&'static CaseSpec> {
    let key = label.trim_start_matches('(').trim_end_matches(')');
    CASES.iter().find(|c| c.label == key).ok_or_else(|| Error::UnknownCase(label.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub label: String,
    pub catalog_case: String,
    pub group: String,
    pub group_id: String,
    pub v: String,
    pub w: String,
    pub sig_m: Vec<u32>,
    pub sig_n: Vec<u32>,
    pub sing: Basket,
    pub k2: i64,
    pub euler: i64,
    pub g_c: u32,
    pub g_f: u32,
    pub points_by_order: BTreeMap<u32, usize>,
    pub fibers: Vec<FiberConfiguration>,
    pub contraction_steps: Vec<String>,
    pub k2_min: i64,
    pub minimal: bool,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let ok = expected == actual;
        self.0.push(Check { name: name.into(), expected, actual, ok });
    }
}

fn points_text(m: &BTreeMap<u32, usize>) -> String {
    m.iter().map(|(n, c)| format!("{c} with |Stab| = {n}")).collect::<Vec<_>>().join(", ")
}

fn parse_types(items: &[&str]) -> Result<Vec<SingularityType>> {
    items.iter().map(|s| s.parse()).collect()
}

/// Fibres in the order of the C-side branch points, with the printed string
/// order where one is recorded.
fn fibers_for(
    case: &CaseSpec,
    surface: &QuotientSurface,
    w: &GeneratingVector,
    orientation_swap: bool,
) -> Result<Vec<FiberConfiguration>> {
    let mut out = Vec::new();
    for (j, mut strings) in surface.strings_by_c_branch(orientation_swap).into_iter().enumerate() {
        if strings.is_empty() {
            continue;
        }
        if let (Some(claim), false) = (&case.fiber, orientation_swap) {
            let ordered = parse_types(claim.strings)?;
            let (mut a, mut b) = (ordered.clone(), strings.clone());
            a.sort();
            b.sort();
            if a == b {
                strings = ordered;
            }
        }
        out.push(build_fiber(w.type_m[j], &strings, surface.invariants.genus_f)?);
    }
    Ok(out)
}

/// Recomputes a worked case from its printed witness.
pub fn verify_case(label: &str) -> Result<CaseReport> {
    verify_case_with(label, false)
}

pub fn verify_case_with(label: &str, orientation_swap: bool) -> Result<CaseReport> {
    let case = spec(label)?;
    let entry = lookup(case.entry)?;
    let g: &FiniteGroup = &entry.group;
    let v = GeneratingVector::from_words(g, case.v, &[])?;
    let w = GeneratingVector::from_words(g, case.w, &case.h)?;
    let mut checks = Checks(Vec::new());
    checks.push("V is a spherical generating vector", true, v.is_valid(g));
    checks.push("W is a genus-one generating vector", true, w.is_valid(g));
    checks.push("signature m", signature_text(&entry.signature_m), signature_text(&v.type_m));
    if !v.is_valid(g) || !w.is_valid(g) {
        return Err(Error::Inconsistent(format!(
            "the witness of case {} is not a pair of generating vectors",
            case.label
        )));
    }

    let surface = QuotientSurface::new(g, &v, &w, orientation_swap)?;
    let stab = stabilizer_set(g, &v.branch, &w.branch);
    if let Some(n) = case.stabilizers {
        checks.push("|S|", n, stab.len());
    }
    for claim in case.fix {
        let h = g.eval(claim.element)?;
        let branch = match claim.side {
            Side::F => &v.branch,
            Side::C => &w.branch,
        };
        let (name, value) = match claim.q {
            Some(q) => (format!("Fix_{:?},{q}({})", claim.side, claim.element), fix_count_rot(g, branch, h, q)?),
            None => (format!("Fix_{:?}({})", claim.side, claim.element), fix_count(g, branch, h)?),
        };
        checks.push(name, claim.value, value);
    }
    let by_order = points_by_stabilizer_order(&surface.points);
    let expected_points: BTreeMap<u32, usize> = case.points.iter().copied().collect();
    checks.push("stabilized points", points_text(&expected_points), points_text(&by_order));

    // Σ_{h≠1} |Fix_C(h)|·|Fix_F(h)| against the coset model.
    let mut formula = 0u64;
    for h in g.elements().filter(|&h| h != g.identity()) {
        formula += fix_count(g, &w.branch, h)? * fix_count(g, &v.branch, h)?;
    }
    checks.push("Σ |Fix_C(h)|·|Fix_F(h)|", weighted_point_count(&surface.points), formula);

    let mut expected_sing: Basket = case.sing.parse()?;
    if orientation_swap {
        expected_sing = expected_sing.reversed();
    }
    let inv = &surface.invariants;
    checks.push("Sing(T)", &expected_sing, &surface.sing);
    checks.push("g(C)", case.g_c, inv.genus_c);
    checks.push("K²", case.k2, inv.k2);
    checks.push("χ", 1, inv.chi);
    checks.push("K² + e", 12, inv.k2 + inv.euler);

    let fibers = fibers_for(case, &surface, &w, orientation_swap)?;
    if let (Some(claim), false) = (&case.fiber, orientation_swap) {
        let texts: Vec<String> = fibers.iter().map(|f| f.to_string()).collect();
        checks.push("fibre", claim.text, texts.join("; "));
        let central: Vec<String> = fibers.iter().map(|f| format!("{:?}", f.central_numbers())).collect();
        checks.push("(K·Y, Y²)", format!("{:?}", claim.central), central.join("; "));
    }
    let contraction = contract_to_minimal(&fibers, inv.k2)?;
    checks.push("K² of the minimal model", case.k2_min, contraction.k2_minimal);
    checks.push("minimal", case.k2_min == case.k2, contraction.is_input_minimal);

    Ok(CaseReport {
        label: case.label.to_string(),
        catalog_case: entry.case_label.to_string(),
        group: entry.name.to_string(),
        group_id: entry.id_label.to_string(),
        v: v.describe(g),
        w: w.describe(g),
        sig_m: v.type_m.clone(),
        sig_n: w.type_m.clone(),
        sing: surface.sing.clone(),
        k2: inv.k2,
        euler: inv.euler,
        g_c: inv.genus_c,
        g_f: inv.genus_f,
        points_by_order: by_order,
        fibers,
        contraction_steps: contraction.steps.clone(),
        k2_min: contraction.k2_minimal,
        minimal: contraction.is_input_minimal,
        checks: checks.0,
    })
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {} ({}), G = {} {}", self.label, self.catalog_case, self.group, self.group_id)?;
        writeln!(f, "V = ({})  m = {}", self.v, signature_text(&self.sig_m))?;
        writeln!(f, "W = ({})  n = {}", self.w, signature_text(&self.sig_n))?;
        writeln!(f, "Sing(T) = {}", self.sing)?;
        writeln!(f, "g(C) = {}, g(F) = {}, K² = {}, e = {}", self.g_c, self.g_f, self.k2, self.euler)?;
        for fib in &self.fibers {
            let (k, y) = fib.central_numbers();
            writeln!(f, "{fib}  K·Y = {k}, Y² = {y}")?;
        }
        if self.minimal {
            writeln!(f, "minimal")?;
        } else {
            writeln!(f, "not minimal: contract {} to reach K² = {}", self.contraction_steps.join(", "), self.k2_min)?;
        }
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let pad = width - c.name.chars().count();
            let status = if c.ok { "ok" } else { "MISMATCH" };
            if c.ok {
                writeln!(f, "  {}{} {}  {status}", c.name, " ".repeat(pad), c.actual)?;
            } else {
                writeln!(f, "  {}{} {} (expected {})  {status}", c.name, " ".repeat(pad), c.actual, c.expected)?;
            }
        }
        Ok(())
    }
}
