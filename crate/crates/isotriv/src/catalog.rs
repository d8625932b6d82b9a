//! Groups acting on genus 2 and genus 3 curves with rational quotient,
//! each with its branching signature and a structural recipe.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// Construction recipes. Entries with the same recipe share one group object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Recipe {
    Cyclic(usize),
    Z2xZ2,
    Z2xZ6,
    S3a,
    S3b,
    Q8,
    D4,
    D4_3,
    D6,
    D2_8_3,
    G24_8,
    Sl23,
    Gl23,
    A4,
    D2_8_5,
    D4_4,
    Z2xD4,
    G16_13,
    D3_7_2,
    D2_12_5,
    Z2xA4,
    S4,
    G32_9,
    G32_11,
    Z2xS4,
    G48_33,
    G48_3,
    G96_64,
    Psl27,
}

fn semi(h: &FiniteGroup, n: &FiniteGroup, x: &str, images: &[(&str, &str)]) -> Result<FiniteGroup> {
    FiniteGroup::semidirect_product(h, n, &[(x, images)])
}

fn cyc(n: usize, l: &str) -> Result<FiniteGroup> {
    FiniteGroup::cyclic(n, l)
}

/// `x·y·x⁻¹ = y^r` on `Z_p ⋉ Z_q`.
fn metacyclic(p: usize, q: usize, r: i64) -> Result<FiniteGroup> {
    let img = format!("y^{r}");
    semi(&cyc(p, "x")?, &cyc(q, "y")?, "x", &[("y", &img)])
}

fn build(recipe: Recipe) -> Result<FiniteGroup> {
    use Recipe::*;
    let g = match recipe {
        Cyclic(n) => cyc(n, "x")?,
        Z2xZ2 => FiniteGroup::direct_product(&cyc(2, "x")?, &cyc(2, "y")?)?,
        Z2xZ6 => FiniteGroup::direct_product(&cyc(2, "x")?, &cyc(6, "y")?)?,
        S3a => FiniteGroup::from_permutations(&["(123)", "(12)"], &["x", "y"], 3)?,
        S3b => FiniteGroup::from_permutations(&["(12)", "(123)"], &["x", "y"], 3)?,
        Q8 => {
            let i = [0, 2, 1, 0];
            let j = [1, 1, 1, 2];
            let k = [2, 1, 1, 1];
            FiniteGroup::from_matrices(&[i, j, k], &["i", "j", "k"], 3)?
        }
        D4 => metacyclic(2, 4, -1)?,
        D4_3 => metacyclic(4, 3, -1)?,
        D6 => metacyclic(2, 6, -1)?,
        D2_8_3 => metacyclic(2, 8, 3)?,
        G24_8 => {
            let n = FiniteGroup::direct_product(
                &FiniteGroup::direct_product(&cyc(2, "y")?, &cyc(2, "z")?)?,
                &cyc(3, "w")?,
            )?;
            semi(&cyc(2, "x")?, &n, "x", &[("z", "zy"), ("w", "w^-1")])?
        }
        Sl23 => FiniteGroup::from_matrices(&[[1, 1, 0, 1], [0, 1, -1, -1]], &["x", "y"], 3)?,
        Gl23 => FiniteGroup::from_matrices(&[[1, 1, 0, -1], [0, -1, 1, -1]], &["x", "y"], 3)?,
        A4 => FiniteGroup::from_permutations(&["(12)(34)", "(123)"], &["x", "y"], 4)?,
        D2_8_5 => metacyclic(2, 8, 5)?,
        D4_4 => metacyclic(4, 4, -1)?,
        Z2xD4 => FiniteGroup::direct_product(&cyc(2, "z")?, &metacyclic(2, 4, -1)?)?,
        G16_13 => {
            let n = FiniteGroup::direct_product(&cyc(2, "y")?, &cyc(4, "z")?)?;
            semi(&cyc(2, "x")?, &n, "x", &[("y", "yz^2")])?
        }
        D3_7_2 => metacyclic(3, 7, 2)?,
        D2_12_5 => metacyclic(2, 12, 5)?,
        Z2xA4 => FiniteGroup::from_permutations(&["(12)(34)", "(123)", "(56)"], &["x", "y", "z"], 6)?,
        S4 => FiniteGroup::from_permutations(&["(1234)", "(12)"], &["x", "y"], 4)?,
        G32_9 => {
            let n = FiniteGroup::direct_product(&cyc(2, "y")?, &cyc(8, "z")?)?;
            semi(&cyc(2, "x")?, &n, "x", &[("z", "yz^3")])?
        }
        G32_11 => {
            let n = semi(&cyc(2, "y")?, &cyc(8, "z")?, "y", &[("z", "z^5")])?;
            semi(&cyc(2, "x")?, &n, "x", &[("y", "yz^4"), ("z", "yz^3")])?
        }
        Z2xS4 => FiniteGroup::from_permutations(&["(12)", "(1234)", "(56)"], &["x", "y", "z"], 6)?,
        G48_33 => g48_33()?,
        G48_3 => {
            let n = FiniteGroup::direct_product(&cyc(4, "y")?, &cyc(4, "z")?)?;
            semi(&cyc(3, "x")?, &n, "x", &[("y", "z"), ("z", "(yz)^-1")])?
        }
        G96_64 => {
            let s3 = metacyclic(2, 3, -1)?;
            let n = FiniteGroup::direct_product(&cyc(4, "z")?, &cyc(4, "w")?)?;
            FiniteGroup::semidirect_product(
                &s3,
                &n,
                &[("x", &[("z", "w"), ("w", "z")]), ("y", &[("z", "w"), ("w", "(zw)^-1")])],
            )?
        }
        Psl27 => FiniteGroup::from_permutations(&["(375)(486)", "(126)(348)"], &["x", "y"], 8)?,
    };
    Ok(g)
}

/// G(48,33) inside GL₂(F₅): `x = 2I` is central of order 4, `z, w` span a
/// quaternion group with `z² = w² = -I`, and `y` is an order-3 element of
/// SL₂(F₅) rotating `z → w → zw`.
fn g48_33() -> Result<FiniteGroup> {
    let p = 5i64;
    let mul = |a: [i64; 4], b: [i64; 4]| {
        [
            (a[0] * b[0] + a[1] * b[2]).rem_euclid(p),
            (a[0] * b[1] + a[1] * b[3]).rem_euclid(p),
            (a[2] * b[0] + a[3] * b[2]).rem_euclid(p),
            (a[2] * b[1] + a[3] * b[3]).rem_euclid(p),
        ]
    };
    let z = [0, 4, 1, 0];
    let w = [0, 2, 2, 0];
    let zw = mul(z, w);
    let mut found = None;
    'search: for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let y = [a, b, c, d];
                    if (a * d - b * c).rem_euclid(p) != 1 {
                        continue;
                    }
                    let y2 = mul(y, y);
                    if mul(y2, y) != [1, 0, 0, 1] || y == [1, 0, 0, 1] {
                        continue;
                    }
                    // y z y⁻¹ = w  <=>  y z = w y
                    if mul(y, z) == mul(w, y) && mul(y, w) == mul(zw, y) {
                        found = Some(y);
                        break 'search;
                    }
                }
            }
        }
    }
    let y = found.ok_or_else(|| Error::Construction("no order-3 element for G(48,33)".into()))?;
    FiniteGroup::from_matrices(&[[2, 0, 0, 2], y, z, w, [4, 0, 0, 4]], &["x", "y", "z", "w", "t"], 5)
}

struct Spec {
    case: &'static str,
    recipe: Recipe,
    name: &'static str,
    id: &'static str,
    m: &'static [u32],
    relations: &'static [&'static str],
}

const fn e(
    case: &'static str,
    recipe: Recipe,
    name: &'static str,
    id: &'static str,
    m: &'static [u32],
    relations: &'static [&'static str],
) -> Spec {
    Spec { case, recipe, name, id, m, relations }
}

const DIHEDRAL: &[&str] = &["x^2", "y^4", "xyx^-1=y^-1"];

const SPECS: &[Spec] = {
    use Recipe::*;
    &[
        e("1a", Cyclic(2), "Z2", "G(2,1)", &[2, 2, 2, 2, 2, 2], &["x^2"]),
        e("1b", Cyclic(3), "Z3", "G(3,1)", &[3, 3, 3, 3], &["x^3"]),
        e("1c", Cyclic(4), "Z4", "G(4,1)", &[2, 2, 4, 4], &["x^4"]),
        e("1d", Z2xZ2, "Z2 x Z2", "G(4,2)", &[2, 2, 2, 2, 2], &["x^2", "y^2", "[x,y]"]),
        e("1e", Cyclic(5), "Z5", "G(5,1)", &[5, 5, 5], &["x^5"]),
        e("1f", Cyclic(6), "Z6", "G(6,2)", &[2, 2, 3, 3], &["x^6"]),
        e("1g", Cyclic(6), "Z6", "G(6,2)", &[3, 6, 6], &["x^6"]),
        e("1h", Cyclic(8), "Z8", "G(8,1)", &[2, 8, 8], &["x^8"]),
        e("1i", Cyclic(10), "Z10", "G(10,2)", &[2, 5, 10], &["x^10"]),
        e("1j", Z2xZ6, "Z2 x Z6", "G(12,5)", &[2, 6, 6], &["x^2", "y^6", "[x,y]"]),
        e("2a", S3a, "S3", "G(6,1)", &[2, 2, 3, 3], &["x=(123)", "y=(12)"]),
        e("2b", Q8, "Q8", "G(8,4)", &[4, 4, 4], &["i^2=j^2=k^2", "i^4", "ij=k", "jk=i", "ki=j"]),
        e("2c", D4, "D4", "G(8,3)", &[2, 2, 2, 4], DIHEDRAL),
        e("2d", D4_3, "D_{4,3,-1}", "G(12,1)", &[3, 4, 4], &["x^4", "y^3", "xyx^-1=y^-1"]),
        e("2e", D6, "D6", "G(12,4)", &[2, 2, 2, 3], &["x^2", "y^6", "xyx^-1=y^-1"]),
        e("2f", D2_8_3, "D_{2,8,3}", "G(16,8)", &[2, 4, 8], &["x^2", "y^8", "xyx^-1=y^3"]),
        e(
            "2g",
            G24_8,
            "Z2 : ((Z2)^2 x Z3)",
            "G(24,8)",
            &[2, 4, 6],
            &["x^2", "y^2", "z^2", "w^3", "[y,z]", "[y,w]", "[z,w]", "xyx^-1=y", "xzx^-1=zy", "xwx^-1=w^-1"],
        ),
        e(
            "2h",
            Sl23,
            "SL(2,3)",
            "G(24,3)",
            &[3, 3, 4],
            &["x=[[1,1],[0,1]]", "y=[[0,1],[-1,-1]]", "x^3", "y^3", "(xy)^6"],
        ),
        e(
            "2i",
            Gl23,
            "GL(2,3)",
            "G(48,29)",
            &[2, 3, 8],
            &["x=[[1,1],[0,-1]]", "y=[[0,-1],[1,-1]]", "x^2", "y^3", "(xy)^8"],
        ),
        e("3a", S3b, "S3", "G(6,1)", &[2, 2, 2, 2, 3], &["x=(12)", "y=(123)"]),
        e("3b", D4, "D4", "G(8,3)", &[2, 2, 4, 4], DIHEDRAL),
        e("3c", D4, "D4", "G(8,3)", &[2, 2, 2, 2, 2], DIHEDRAL),
        e("3d", D4_3, "D_{4,3,-1}", "G(12,1)", &[4, 4, 6], &["x^4", "y^3", "xyx^-1=y^-1"]),
        e("3e", D6, "D6", "G(12,4)", &[2, 2, 2, 6], &["x^2", "y^6", "xyx^-1=y^-1"]),
        e("3f", A4, "A4", "G(12,3)", &[2, 2, 3, 3], &["x=(12)(34)", "y=(123)"]),
        e("3g", D2_8_5, "D_{2,8,5}", "G(16,6)", &[2, 8, 8], &["x^2", "y^8", "xyx^-1=y^5"]),
        e("3h", D4_4, "D_{4,4,-1}", "G(16,4)", &[4, 4, 4], &["x^4", "y^4", "xyx^-1=y^-1"]),
        e("3i", Z2xD4, "Z2 x D4", "G(16,11)", &[2, 2, 2, 4], &["z^2", "[z,x]", "[z,y]", "x^2", "y^4", "xyx^-1=y^-1"]),
        e(
            "3j",
            G16_13,
            "Z2 : (Z2 x Z4)",
            "G(16,13)",
            &[2, 2, 2, 4],
            &["x^2", "y^2", "z^4", "[x,z]", "[y,z]", "xyx^-1=yz^2"],
        ),
        e("3k", D3_7_2, "D_{3,7,2}", "G(21,1)", &[3, 3, 7], &["x^3", "y^7", "xyx^-1=y^2"]),
        e("3l", D2_12_5, "D_{2,12,5}", "G(24,5)", &[2, 4, 12], &["x^2", "y^12", "xyx^-1=y^5"]),
        e("3m", Z2xA4, "Z2 x A4", "G(24,13)", &[2, 6, 6], &["z^2", "[z,x]", "[z,y]", "x=(12)(34)", "y=(123)"]),
        e(
            "3n",
            Sl23,
            "SL(2,3)",
            "G(24,3)",
            &[3, 3, 6],
            &["x=[[1,1],[0,1]]", "y=[[0,1],[-1,-1]]", "x^3", "y^3", "(xy)^6"],
        ),
        e("3o", S4, "S4", "G(24,12)", &[3, 4, 4], &["x=(1234)", "y=(12)"]),
        e("3p", S4, "S4", "G(24,12)", &[2, 2, 2, 3], &["x=(1234)", "y=(12)"]),
        e(
            "3q",
            G32_9,
            "Z2 : (Z2 x Z8)",
            "G(32,9)",
            &[2, 4, 8],
            &["x^2", "y^2", "z^8", "[x,y]", "[y,z]", "xzx^-1=yz^3"],
        ),
        e(
            "3r",
            G32_11,
            "Z2 : D_{2,8,5}",
            "G(32,11)",
            &[2, 4, 8],
            &["x^2", "y^2", "z^8", "yzy^-1=z^5", "xyx^-1=yz^4", "xzx^-1=yz^3"],
        ),
        e("3s", Z2xS4, "Z2 x S4", "G(48,48)", &[2, 4, 6], &["z^2", "[z,x]", "[z,y]", "x=(12)", "y=(1234)"]),
        e(
            "3t",
            G48_33,
            "G(48,33)",
            "G(48,33)",
            &[2, 3, 12],
            &["x^2=z^2=w^2=t", "y^3", "t^2", "yzy^-1=w", "ywy^-1=zw", "zwz^-1=wt", "[x,y]", "[x,z]"],
        ),
        e(
            "3u",
            G48_3,
            "Z3 : (Z4)^2",
            "G(48,3)",
            &[3, 3, 4],
            &["x^3", "y^4", "z^4", "[y,z]", "xyx^-1=z", "xzx^-1=(yz)^-1"],
        ),
        e(
            "3v",
            G96_64,
            "S3 : (Z4)^2",
            "G(96,64)",
            &[2, 3, 8],
            &["x^2", "y^3", "z^4", "w^4", "[z,w]", "xyx^-1=y^-1", "xzx^-1=w", "xwx^-1=z", "yzy^-1=w", "ywy^-1=(zw)^-1"],
        ),
        e("3w", Psl27, "PSL(2,7)", "G(168,42)", &[2, 3, 7], &["x=(375)(486)", "y=(126)(348)"]),
    ]
};

#[derive(Debug, Serialize)]
pub struct CatalogEntry {
    #[serde(rename = "case")]
    pub case_label: &'static str,
    #[serde(rename = "group")]
    pub name: &'static str,
    #[serde(rename = "group_id")]
    pub id_label: &'static str,
    pub order: usize,
    #[serde(rename = "signature")]
    pub signature_m: Vec<u32>,
    pub genus: u32,
    #[serde(skip)]
    pub relations: Vec<&'static str>,
    #[serde(skip)]
    pub group: Arc<FiniteGroup>,
}

impl CatalogEntry {
    pub fn is_abelian(&self) -> bool {
        self.case_label.starts_with('1')
    }

    /// `(m_1, …, m_r)` in exponent notation, e.g. `(2^4,3)`.
    pub fn signature_text(&self) -> String {
        signature_text(&self.signature_m)
    }
}

pub fn signature_text(m: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        parts.push(if j - i > 1 { format!("{}^{}", m[i], j - i) } else { m[i].to_string() });
        i = j;
    }
    format!("({})", parts.join(","))
}

#[derive(Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    fn load() -> Result<Self> {
        let mut built: HashMap<Recipe, Arc<FiniteGroup>> = HashMap::new();
        let mut entries = Vec::new();
        for s in SPECS {
            let group = match built.get(&s.recipe) {
                Some(g) => g.clone(),
                None => {
                    let g = Arc::new(build(s.recipe)?.with_name(s.name));
                    built.insert(s.recipe, g.clone());
                    g
                }
            };
            entries.push(CatalogEntry {
                case_label: s.case,
                name: s.name,
                id_label: s.id,
                order: group.size(),
                signature_m: s.m.to_vec(),
                genus: if s.case.starts_with('3') { 3 } else { 2 },
                relations: s.relations.to_vec(),
                group,
            });
        }
        Ok(Catalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn lookup(&self, case_label: &str) -> Result<&CatalogEntry> {
        let key = case_label.trim_start_matches('(').trim_end_matches(')');
        self.entries.iter().find(|e| e.case_label == key).ok_or_else(|| Error::UnknownCase(case_label.to_string()))
    }

    fn table(&self, prefix: char) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.case_label.starts_with(prefix)).collect()
    }

    pub fn genus2_abelian(&self) -> Vec<&CatalogEntry> {
        self.table('1')
    }

    pub fn genus2_nonabelian(&self) -> Vec<&CatalogEntry> {
        self.table('2')
    }

    pub fn genus3_nonabelian(&self) -> Vec<&CatalogEntry> {
        self.table('3')
    }

    pub fn with_genus(&self, genus: u32) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.genus == genus)
    }
}

/// The shared catalog, built on first use.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::load().expect("catalog recipes are valid"))
}

pub fn lookup(case_label: &str) -> Result<&'static CatalogEntry> {
    catalog().lookup(case_label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        let c = catalog();
        assert_eq!(c.genus2_abelian().len(), 10);
        assert_eq!(c.genus2_nonabelian().len(), 9);
        assert_eq!(c.genus3_nonabelian().len(), 23);
    }

    #[test]
    fn orders_match_labels() {
        for e in catalog().entries() {
            let order: usize = e.id_label[2..e.id_label.find(',').unwrap()].parse().unwrap();
            assert_eq!(e.group.size(), order, "case {}", e.case_label);
        }
    }

    #[test]
    fn presentations_hold() {
        for e in catalog().entries() {
            let r = e.group.verify_presentation(&e.relations);
            assert_eq!(r, Ok(true), "case {}", e.case_label);
        }
    }

    #[test]
    fn abelian_placement() {
        for e in catalog().entries() {
            assert_eq!(e.group.is_abelian(), e.is_abelian(), "case {}", e.case_label);
        }
    }

    #[test]
    fn lookups() {
        let f = lookup("2f").unwrap();
        assert_eq!((f.name, f.id_label, f.signature_m.as_slice()), ("D_{2,8,3}", "G(16,8)", &[2, 4, 8][..]));
        let a = lookup("1a").unwrap();
        assert_eq!((a.id_label, a.signature_text()), ("G(2,1)", "(2^6)".to_string()));
        assert_eq!(lookup("3w").unwrap().id_label, "G(168,42)");
        assert_eq!(lookup("9z").unwrap_err(), Error::UnknownCase("9z".into()));
    }

    #[test]
    fn shared_groups() {
        let b = lookup("3b").unwrap();
        let c = lookup("3c").unwrap();
        assert!(Arc::ptr_eq(&b.group, &c.group));
        assert!(!Arc::ptr_eq(&lookup("2a").unwrap().group, &lookup("3a").unwrap().group));
    }
}
