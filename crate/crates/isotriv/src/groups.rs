//! Finite groups as full Cayley tables, built from permutations, matrices
//! over F_p, or cyclic/direct/semidirect composition.
//!
//! Elements are table indices (`Elem`); index 0 is always the identity and
//! the remaining indices follow breadth-first discovery from the generators,
//! so iteration order is reproducible.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Elem = usize;

/// Default ceiling for closure computations.
pub const ORDER_BOUND: usize = 500;

#[derive(Clone, Debug)]
enum Realization {
    Abstract,
    Permutation { degree: usize, index: HashMap<Vec<u8>, Elem>, perms: Vec<Vec<u8>> },
    Matrix { p: u32, index: HashMap<[u32; 4], Elem>, mats: Vec<[u32; 4]> },
}

#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    size: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    orders: Vec<u32>,
    labels: Vec<(String, Elem)>,
    class_id: Vec<u32>,
    classes: Vec<Vec<Elem>>,
    realization: Realization,
    words: OnceLock<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Elem,
    pub members: Vec<Elem>,
}

fn closure<T: Clone + Eq + Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
    bound: usize,
) -> Result<(Vec<T>, Vec<u16>)> {
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = mul(&elems[i], g);
            if !index.contains_key(&p) {
                if elems.len() == bound {
                    return Err(Error::OrderBound(bound));
                }
                index.insert(p.clone(), elems.len());
                elems.push(p);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = index[&mul(&elems[a], &elems[b])] as u16;
        }
    }
    Ok((elems, table))
}

/// Parses cycle notation such as `(375)(486)` into 0-based images.
/// Cycles compose right to left, so `(13)(12)` is `(123)`.
pub fn parse_permutation(s: &str, degree: usize) -> Result<Vec<u8>> {
    let bad = |m: &str| Error::Parse(format!("{m} in permutation {s:?}"));
    let mut perm: Vec<u8> = (0..degree as u8).collect();
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let inner = &body[..close];
        let points: Vec<usize> = if inner.contains(',') {
            inner.split(',').map(|t| t.parse::<usize>()).collect::<std::result::Result<_, _>>()
        } else {
            inner.chars().map(|c| c.to_string().parse::<usize>()).collect::<std::result::Result<_, _>>()
        }
        .map_err(|_| bad("bad point"))?;
        if points.iter().any(|&p| p == 0 || p > degree) {
            return Err(bad("point out of range"));
        }
        let mut cycle: Vec<u8> = (0..degree as u8).collect();
        for (k, &p) in points.iter().enumerate() {
            cycle[p - 1] = (points[(k + 1) % points.len()] - 1) as u8;
        }
        let mut seen = vec![false; degree];
        for &p in &points {
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(bad("repeated point"));
            }
        }
        perm = perm_compose(&perm, &cycle);
        rest = &body[close + 1..];
    }
    Ok(perm)
}

/// `(a∘b)(x) = a(b(x))`.
fn perm_compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&x| a[x as usize]).collect()
}

/// Cycle notation, 1-based, with `()` for the identity.
pub fn format_permutation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn mat_mul(a: &[u32; 4], b: &[u32; 4], p: u32) -> [u32; 4] {
    let p = p as u64;
    let [a0, a1, a2, a3] = a.map(|x| x as u64);
    let [b0, b1, b2, b3] = b.map(|x| x as u64);
    [
        ((a0 * b0 + a1 * b2) % p) as u32,
        ((a0 * b1 + a1 * b3) % p) as u32,
        ((a2 * b0 + a3 * b2) % p) as u32,
        ((a2 * b1 + a3 * b3) % p) as u32,
    ]
}

fn mat_reduce(m: [i64; 4], p: u32) -> [u32; 4] {
    m.map(|x| x.rem_euclid(p as i64) as u32)
}

/// An automorphism of N given on N's labels, or an action of H on N given on
/// H's labels (each entry maps an H label to images of N labels as words).
pub type ActionSpec<'a> = &'a [(&'a str, &'a [(&'a str, &'a str)])];

impl FiniteGroup {
    fn from_table(name: String, table: Vec<u16>, labels: Vec<(String, Elem)>, realization: Realization) -> Self {
        let size = (table.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(size * size, table.len());
        let mut inverse = vec![0u16; size];
        for a in 0..size {
            inverse[a] = (0..size).find(|&b| table[a * size + b] == 0).expect("group has inverses") as u16;
        }
        let mut orders = vec![1u32; size];
        for a in 1..size {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * size + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        let mut g = FiniteGroup {
            name,
            size,
            table,
            inverse,
            orders,
            labels,
            class_id: vec![u32::MAX; size],
            classes: Vec::new(),
            realization,
            words: OnceLock::new(),
        };
        for a in 0..size {
            if g.class_id[a] != u32::MAX {
                continue;
            }
            let mut members: Vec<Elem> = (0..size).map(|s| g.conjugate(a, s)).collect();
            members.sort_unstable();
            members.dedup();
            let id = g.classes.len() as u32;
            for &m in &members {
                g.class_id[m] = id;
            }
            g.classes.push(members);
        }
        #[cfg(debug_assertions)]
        g.spot_check_associativity();
        g
    }

    #[cfg(debug_assertions)]
    fn spot_check_associativity(&self) {
        let n = self.size;
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n as u64) as usize
        };
        for _ in 0..64 {
            let (a, b, c) = (next(), next(), next());
            assert_eq!(
                self.mul(self.mul(a, b), c),
                self.mul(a, self.mul(b, c)),
                "multiplication table is not associative"
            );
        }
    }

    fn labels_from(names: &[&str], count: usize) -> Result<Vec<String>> {
        if names.len() != count {
            return Err(Error::Construction(format!("{} labels for {count} generators", names.len())));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Construction(format!("duplicate label {a:?}")));
            }
        }
        Ok(names.iter().map(|s| s.to_string()).collect())
    }

    /// Closure of permutations on `{1..degree}` under composition.
    pub fn from_permutations(gens: &[&str], labels: &[&str], degree: usize) -> Result<Self> {
        let names = Self::labels_from(labels, gens.len())?;
        let perms: Vec<Vec<u8>> = gens.iter().map(|s| parse_permutation(s, degree)).collect::<Result<_>>()?;
        let identity: Vec<u8> = (0..degree as u8).collect();
        let (elems, table) = closure(identity, &perms, |a, b| perm_compose(a, b), ORDER_BOUND)?;
        let index: HashMap<Vec<u8>, Elem> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let labels = names.into_iter().zip(perms.iter().map(|p| index[p])).collect();
        let name = format!("<{}>", gens.join(", "));
        Ok(Self::from_table(name, table, labels, Realization::Permutation { degree, index, perms: elems }))
    }

    /// Closure of invertible 2×2 matrices (row-major) over F_p.
    pub fn from_matrices(gens: &[[i64; 4]], labels: &[&str], p: u32) -> Result<Self> {
        let names = Self::labels_from(labels, gens.len())?;
        let mats: Vec<[u32; 4]> = gens.iter().map(|m| mat_reduce(*m, p)).collect();
        for m in &mats {
            let det = (m[0] as u64 * m[3] as u64 + (p as u64 - m[1] as u64 * m[2] as u64 % p as u64)) % p as u64;
            if det == 0 {
                return Err(Error::Construction(format!("singular matrix {m:?} over F_{p}")));
            }
        }
        let (elems, table) = closure([1, 0, 0, 1], &mats, |a, b| mat_mul(a, b, p), ORDER_BOUND)?;
        let index: HashMap<[u32; 4], Elem> = elems.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let labels = names.into_iter().zip(mats.iter().map(|m| index[m])).collect();
        Ok(Self::from_table(
            format!("matrices over F_{p}"),
            table,
            labels,
            Realization::Matrix { p, index, mats: elems },
        ))
    }

    /// Z_n with generator labelled `label`; element `k` is the `k`-th power.
    pub fn cyclic(n: usize, label: &str) -> Result<Self> {
        if n == 0 || n > ORDER_BOUND {
            return Err(Error::Construction(format!("cyclic group of order {n}")));
        }
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u16).collect();
        let gen = if n == 1 { 0 } else { 1 };
        Ok(Self::from_table(format!("Z{n}"), table, vec![(label.to_string(), gen)], Realization::Abstract))
    }

    pub fn direct_product(h: &FiniteGroup, n: &FiniteGroup) -> Result<Self> {
        Self::semidirect_product(h, n, &[])
    }

    /// `H ⋉ N` on pairs `(a, b)`, written `a·b`, with
    /// `(a,b)(c,d) = (ac, φ(c⁻¹)(b)·d)` so that `a b a⁻¹ = φ(a)(b)`.
    ///
    /// `action` gives, for generators of `H`, the images of N's generators;
    /// unlisted generators act trivially. Both the automorphism property and
    /// compatibility with H's relations are verified.
    pub fn semidirect_product(h: &FiniteGroup, n: &FiniteGroup, action: ActionSpec<'_>) -> Result<Self> {
        for (hl, _) in &h.labels {
            if n.label(hl).is_some() {
                return Err(Error::Construction(format!("label {hl:?} used in both factors")));
            }
        }
        let mut gen_auts: Vec<Vec<Elem>> = Vec::new();
        for (hl, _) in &h.labels {
            let aut = match action.iter().find(|(l, _)| l == hl) {
                Some((_, images)) => n.automorphism_from_images(images)?,
                None => (0..n.size).collect(),
            };
            gen_auts.push(aut);
        }
        for (l, _) in action {
            if h.label(l).is_none() {
                return Err(Error::UnknownLabel(l.to_string()));
            }
        }
        let gen_elems: Vec<Elem> = h.labels.iter().map(|(_, e)| *e).collect();
        let phi = h
            .extend_homomorphism(
                &gen_elems,
                &gen_auts,
                |f, g| {
                    // (f∘g)(x) = f(g(x))
                    g.iter().map(|&x| f[x]).collect()
                },
                (0..n.size).collect(),
            )
            .map_err(|_| Error::Construction("action does not respect the relations of H".into()))?;

        let (hs, ns) = (h.size, n.size);
        let size = hs * ns;
        if size > ORDER_BOUND {
            return Err(Error::OrderBound(ORDER_BOUND));
        }
        let mut table = vec![0u16; size * size];
        for a in 0..hs {
            for b in 0..ns {
                for c in 0..hs {
                    let twist = &phi[h.inv(c)];
                    let ac = h.mul(a, c);
                    let tb = twist[b];
                    for d in 0..ns {
                        table[(a * ns + b) * size + c * ns + d] = (ac * ns + n.mul(tb, d)) as u16;
                    }
                }
            }
        }
        let mut labels: Vec<(String, Elem)> = h.labels.iter().map(|(l, e)| (l.clone(), e * ns)).collect();
        labels.extend(n.labels.iter().map(|(l, e)| (l.clone(), *e)));
        let name =
            if action.is_empty() { format!("{} x {}", h.name, n.name) } else { format!("{} : {}", h.name, n.name) };
        Ok(Self::from_table(name, table, labels, Realization::Abstract))
    }

    /// Extends a map on generators to a homomorphism `self → M`, checking
    /// consistency on every edge of the Cayley graph.
    fn extend_homomorphism<M: Clone + PartialEq>(
        &self,
        gens: &[Elem],
        images: &[M],
        compose: impl Fn(&M, &M) -> M,
        identity: M,
    ) -> std::result::Result<Vec<M>, ()> {
        let mut phi: Vec<Option<M>> = vec![None; self.size];
        phi[0] = Some(identity);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            let pe = phi[e].clone().expect("visited");
            for (g, img) in gens.iter().zip(images) {
                let t = self.mul(e, *g);
                let v = compose(&pe, img);
                match &phi[t] {
                    Some(existing) if *existing != v => return Err(()),
                    Some(_) => {}
                    None => {
                        phi[t] = Some(v);
                        queue.push_back(t);
                    }
                }
            }
        }
        phi.into_iter().map(|x| x.ok_or(())).collect()
    }

    /// Builds an automorphism from images of the labelled generators.
    fn automorphism_from_images(&self, images: &[(&str, &str)]) -> Result<Vec<Elem>> {
        let mut gens = Vec::new();
        let mut imgs = Vec::new();
        for (l, e) in &self.labels {
            gens.push(*e);
            imgs.push(match images.iter().find(|(x, _)| x == l) {
                Some((_, w)) => self.eval(w)?,
                None => *e,
            });
        }
        for (l, _) in images {
            if self.label(l).is_none() {
                return Err(Error::UnknownLabel(l.to_string()));
            }
        }
        let map = self
            .extend_homomorphism(&gens, &imgs, |a, b| self.mul(*a, *b), 0)
            .map_err(|_| Error::Construction("generator images do not define a homomorphism".into()))?;
        let mut seen = vec![false; self.size];
        for &x in &map {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::Construction("generator images do not define an automorphism".into()));
            }
        }
        Ok(map)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// |G|
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.size + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as Elem
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let ord = self.orders[a] as i64;
        let k = k.rem_euclid(ord);
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    /// Element order |g|.
    #[inline]
    pub fn order(&self, a: Elem) -> u32 {
        self.orders[a]
    }

    /// `s·a·s⁻¹`
    #[inline]
    pub fn conjugate(&self, a: Elem, s: Elem) -> Elem {
        self.mul(self.mul(s, a), self.inv(s))
    }

    /// `[a,b] = a b a⁻¹ b⁻¹`
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn product(&self, elems: &[Elem]) -> Elem {
        elems.iter().fold(0, |acc, &e| self.mul(acc, e))
    }

    pub fn class_id(&self, a: Elem) -> usize {
        self.class_id[a] as usize
    }

    pub fn are_conjugate(&self, a: Elem, b: Elem) -> bool {
        self.class_id[a] == self.class_id[b]
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn conjugacy_class(&self, a: Elem) -> ConjugacyClass {
        ConjugacyClass { representative: a, members: self.classes[self.class_id(a)].clone() }
    }

    pub fn centralizer(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&s| self.mul(s, a) == self.mul(a, s)).collect()
    }

    /// Powers of `a`, in order `1, a, a², …`.
    pub fn cyclic_subgroup(&self, a: Elem) -> Vec<Elem> {
        let mut out = vec![0];
        let mut x = a;
        while x != 0 {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    /// N_G(⟨h⟩)
    pub fn normalizer_of_cyclic(&self, h: Elem) -> Vec<Elem> {
        let sub = self.membership(&self.cyclic_subgroup(h));
        self.elements().filter(|&s| sub[self.conjugate(h, s)]).collect()
    }

    pub fn membership(&self, set: &[Elem]) -> Vec<bool> {
        let mut m = vec![false; self.size];
        for &x in set {
            m[x] = true;
        }
        m
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated_by(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let e = out[i];
            for &g in gens {
                let p = self.mul(e, g);
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn generates(&self, gens: &[Elem]) -> bool {
        self.generated_by(gens).len() == self.size
    }

    pub fn derived_subgroup(&self) -> Vec<Elem> {
        let mut comms: Vec<Elem> = Vec::new();
        let mut seen = vec![false; self.size];
        for a in self.elements() {
            for b in self.elements() {
                let c = self.commutator(a, b);
                if !std::mem::replace(&mut seen[c], true) {
                    comms.push(c);
                }
            }
        }
        self.generated_by(&comms)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (a + 1..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn labels(&self) -> &[(String, Elem)] {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<Elem> {
        self.labels.iter().find(|(l, _)| l == name).map(|(_, e)| *e)
    }

    /// Evaluates a word such as `xyx^-1`, `(yz)^{-1}`, `[x,y]`, `z(14)` or
    /// `[[1,1],[0,-1]]`. Cycle and matrix literals need the matching realization.
    pub fn eval(&self, word: &str) -> Result<Elem> {
        let chars: Vec<char> = word.chars().collect();
        let mut p = WordParser { g: self, s: &chars, i: 0, src: word };
        let e = p.seq(None)?;
        p.skip_ws();
        if p.i != chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// True iff every relation holds and the labelled generators generate G.
    /// Relations are words equal to 1, or chains `u = v = …`.
    pub fn verify_presentation(&self, relations: &[&str]) -> Result<bool> {
        let mut ok = true;
        for rel in relations {
            let sides: Vec<Elem> = rel.split('=').map(|w| self.eval(w)).collect::<Result<_>>()?;
            if sides.len() == 1 {
                ok &= sides[0] == 0;
            } else {
                ok &= sides.windows(2).all(|w| w[0] == w[1]);
            }
        }
        let gens: Vec<Elem> = self.labels.iter().map(|(_, e)| *e).collect();
        Ok(ok && self.generates(&gens))
    }

    /// Shortlex-least positive word in the labels for every element.
    pub fn words(&self) -> &[String] {
        self.words.get_or_init(|| {
            let mut raw: Vec<Option<Vec<usize>>> = vec![None; self.size];
            raw[0] = Some(Vec::new());
            let mut queue = VecDeque::from([0usize]);
            while let Some(e) = queue.pop_front() {
                for (k, (_, g)) in self.labels.iter().enumerate() {
                    let t = self.mul(e, *g);
                    if raw[t].is_none() {
                        let mut w = raw[e].clone().expect("visited");
                        w.push(k);
                        raw[t] = Some(w);
                        queue.push_back(t);
                    }
                }
            }
            raw.into_iter()
                .map(|w| {
                    let w = w.expect("labels generate the group");
                    if w.is_empty() {
                        return "1".to_string();
                    }
                    let mut out = String::new();
                    let mut i = 0;
                    while i < w.len() {
                        let mut j = i;
                        while j < w.len() && w[j] == w[i] {
                            j += 1;
                        }
                        out.push_str(&self.labels[w[i]].0);
                        if j - i > 1 {
                            out.push_str(&format!("^{}", j - i));
                        }
                        i = j;
                    }
                    out
                })
                .collect()
        })
    }

    pub fn word(&self, a: Elem) -> &str {
        &self.words()[a]
    }

    /// Concrete notation where available (cycles or a matrix), else a word.
    pub fn describe(&self, a: Elem) -> String {
        match &self.realization {
            Realization::Permutation { perms, .. } => format_permutation(&perms[a]),
            Realization::Matrix { mats, p, .. } => {
                let m = mats[a].map(|x| if x > p / 2 { x as i64 - *p as i64 } else { x as i64 });
                format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3])
            }
            Realization::Abstract => self.word(a).to_string(),
        }
    }
}

struct WordParser<'a> {
    g: &'a FiniteGroup,
    s: &'a [char],
    i: usize,
    src: &'a str,
}

impl WordParser<'_> {
    fn err(&self, m: &str) -> Error {
        Error::Parse(format!("{m} at position {} in {:?}", self.i, self.src))
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && (self.s[self.i].is_whitespace() || matches!(self.s[self.i], '*' | '·')) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let braced = self.peek() == Some('{');
        if braced {
            self.i += 1;
        }
        self.skip_ws();
        let start = self.i;
        if self.s.get(self.i) == Some(&'-') {
            self.i += 1;
        }
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let text: String = self.s[start..self.i].iter().collect();
        let v = text.parse::<i64>().map_err(|_| self.err("expected an integer"))?;
        if braced {
            self.expect('}')?;
        }
        Ok(v)
    }

    fn seq(&mut self, until: Option<char>) -> Result<Elem> {
        let mut acc = 0;
        loop {
            match self.peek() {
                None => {
                    return if until.is_none() { Ok(acc) } else { Err(self.err("unexpected end")) };
                }
                Some(c) if Some(c) == until => return Ok(acc),
                Some(c) if until.is_none() && matches!(c, ')' | ']' | ',') => {
                    return Err(self.err("unbalanced bracket"));
                }
                Some(')' | ']' | ',') => return Err(self.err("unexpected delimiter")),
                _ => {}
            }
            let mut atom = self.atom()?;
            if self.peek() == Some('^') {
                self.i += 1;
                let k = self.int()?;
                atom = self.g.pow(atom, k);
            }
            acc = self.g.mul(acc, atom);
        }
    }

    fn atom(&mut self) -> Result<Elem> {
        let c = self.peek().ok_or_else(|| self.err("expected a factor"))?;
        if c.is_ascii_alphabetic() {
            self.i += 1;
            let name = c.to_string();
            return self.g.label(&name).ok_or(Error::UnknownLabel(name));
        }
        if c == '1' {
            self.i += 1;
            return Ok(0);
        }
        if c == '(' {
            self.i += 1;
            if self.peek().is_some_and(|d| d.is_ascii_digit()) || self.peek() == Some(')') {
                return self.cycle();
            }
            let e = self.seq(Some(')'))?;
            self.expect(')')?;
            return Ok(e);
        }
        if c == '[' {
            self.i += 1;
            if self.peek() == Some('[') {
                return self.matrix();
            }
            let a = self.seq(Some(','))?;
            self.expect(',')?;
            let b = self.seq(Some(']'))?;
            self.expect(']')?;
            return Ok(self.g.commutator(a, b));
        }
        Err(self.err("unexpected character"))
    }

    fn cycle(&mut self) -> Result<Elem> {
        let start = self.i;
        while self.s.get(self.i).is_some_and(|&c| c != ')') {
            self.i += 1;
        }
        self.expect(')')?;
        // Adjacent cycles form one literal, e.g. (12)(34).
        while self.peek() == Some('(') && self.s.get(self.i + 1).is_some_and(|c| c.is_ascii_digit()) {
            while self.s.get(self.i).is_some_and(|&c| c != ')') {
                self.i += 1;
            }
            self.expect(')')?;
        }
        let literal: String = self.s[start - 1..self.i].iter().collect();
        match &self.g.realization {
            Realization::Permutation { degree, index, .. } => {
                let p = parse_permutation(&literal, *degree)?;
                index.get(&p).copied().ok_or_else(|| self.err("permutation not in the group"))
            }
            _ => Err(self.err("cycle literal in a non-permutation group")),
        }
    }

    fn matrix(&mut self) -> Result<Elem> {
        let mut vals = [0i64; 4];
        for (k, v) in vals.iter_mut().enumerate() {
            if k % 2 == 0 {
                self.expect('[')?;
            }
            *v = self.int()?;
            if k % 2 == 0 {
                self.expect(',')?;
            } else {
                self.expect(']')?;
                if k == 1 {
                    self.expect(',')?;
                }
            }
        }
        self.expect(']')?;
        match &self.g.realization {
            Realization::Matrix { p, index, .. } => {
                index.get(&mat_reduce(vals, *p)).copied().ok_or_else(|| self.err("matrix not in the group"))
            }
            _ => Err(self.err("matrix literal in a non-matrix group")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&["(12)", "(123)"], &["x", "y"], 3).unwrap()
    }

    #[test]
    fn permutation_orders() {
        assert_eq!(s3().size(), 6);
        let psl = FiniteGroup::from_permutations(&["(375)(486)", "(126)(348)"], &["x", "y"], 8).unwrap();
        assert_eq!(psl.size(), 168);
        let s4 = FiniteGroup::from_permutations(&["(1234)", "(12)"], &["x", "y"], 4).unwrap();
        assert_eq!(s4.size(), 24);
        assert_eq!(s4.conjugacy_class(s4.eval("(123)").unwrap()).members.len(), 8);
    }

    #[test]
    fn composition_is_right_to_left() {
        assert_eq!(parse_permutation("(13)(12)", 3).unwrap(), parse_permutation("(123)", 3).unwrap());
        let g = s3();
        assert_eq!(g.eval("(13)(12)").unwrap(), g.eval("(123)").unwrap());
        assert_eq!(format_permutation(&parse_permutation("(375)(486)", 8).unwrap()), "(375)(486)");
    }

    #[test]
    fn order_bound() {
        let r = FiniteGroup::from_permutations(&["(123456789)", "(12)"], &["x", "y"], 9);
        assert_eq!(r.unwrap_err(), Error::OrderBound(ORDER_BOUND));
    }

    #[test]
    fn products() {
        let z2 = FiniteGroup::cyclic(2, "x").unwrap();
        let z8 = FiniteGroup::cyclic(8, "y").unwrap();
        let d = FiniteGroup::semidirect_product(&z2, &z8, &[("x", &[("y", "y^3")])]).unwrap();
        assert_eq!(d.size(), 16);
        assert!(d.verify_presentation(&["x^2", "y^8", "xyx^-1y^-3"]).unwrap());
        assert!(!d.is_abelian());

        let s4 = FiniteGroup::from_permutations(&["(1234)", "(12)"], &["x", "y"], 4).unwrap();
        let z = FiniteGroup::cyclic(2, "z").unwrap();
        assert_eq!(FiniteGroup::direct_product(&z, &s4).unwrap().size(), 48);

        let z3 = FiniteGroup::cyclic(3, "x").unwrap();
        let y4 = FiniteGroup::cyclic(4, "y").unwrap();
        let z4 = FiniteGroup::cyclic(4, "z").unwrap();
        let n = FiniteGroup::direct_product(&y4, &z4).unwrap();
        let g = FiniteGroup::semidirect_product(&z3, &n, &[("x", &[("y", "z"), ("z", "(yz)^-1")])]).unwrap();
        assert_eq!(g.size(), 48);
        assert!(g.verify_presentation(&["x^3", "y^4", "z^4", "[y,z]", "xyx^-1=z", "xzx^-1=(yz)^-1"]).unwrap());
    }

    #[test]
    fn bad_actions_rejected() {
        let z2 = FiniteGroup::cyclic(2, "x").unwrap();
        let z3 = FiniteGroup::cyclic(3, "x").unwrap();
        let z4 = FiniteGroup::cyclic(4, "y").unwrap();
        // y -> y^2 is not an automorphism of Z4
        assert!(FiniteGroup::semidirect_product(&z2, &z4, &[("x", &[("y", "y^2")])]).is_err());
        // an order-3 generator cannot invert Z4 (x^3 acts as inversion, not identity)
        assert!(FiniteGroup::semidirect_product(&z3, &z4, &[("x", &[("y", "y^3")])]).is_err());
    }

    #[test]
    fn matrices() {
        let sl = FiniteGroup::from_matrices(&[[1, 1, 0, 1], [0, 1, -1, -1]], &["x", "y"], 3).unwrap();
        assert_eq!(sl.size(), 24);
        let gl = FiniteGroup::from_matrices(&[[1, 1, 0, -1], [0, -1, 1, -1]], &["x", "y"], 3).unwrap();
        assert_eq!(gl.size(), 48);
        assert_eq!(gl.derived_subgroup().len(), 24);
        assert_eq!(gl.eval("[[1,1],[0,-1]]").unwrap(), gl.label("x").unwrap());
        let one = FiniteGroup::from_matrices(&[[1, 0, 0, 1]], &["x"], 5).unwrap();
        assert_eq!(one.size(), 1);
        assert!(FiniteGroup::from_matrices(&[[1, 1, 1, 1]], &["x"], 3).is_err());
    }

    #[test]
    fn queries() {
        let g = s3();
        assert_eq!(g.centralizer(g.identity()).len(), 6);
        assert_eq!(g.derived_subgroup().len(), 3);
        let y = g.label("y").unwrap();
        assert_eq!(g.normalizer_of_cyclic(y).len(), 6);
        assert_eq!(g.normalizer_of_cyclic(g.label("x").unwrap()).len(), 2);
        assert!(g.verify_presentation(&["x^2", "y^3", "(xy)^2"]).unwrap());
        assert_eq!(g.verify_presentation(&["q^2"]), Err(Error::UnknownLabel("q".into())));
        let z2 = FiniteGroup::cyclic(2, "x").unwrap();
        let z4 = FiniteGroup::cyclic(4, "y").unwrap();
        let d4 = FiniteGroup::semidirect_product(&z2, &z4, &[("x", &[("y", "y^-1")])]).unwrap();
        assert!(!d4.verify_presentation(&["xyx^-1y^-1"]).unwrap());
    }

    #[test]
    fn words_round_trip() {
        let g = FiniteGroup::from_permutations(&["(375)(486)", "(126)(348)"], &["x", "y"], 8).unwrap();
        for e in g.elements() {
            assert_eq!(g.eval(g.word(e)).unwrap(), e);
        }
    }

    #[test]
    fn class_equation() {
        let g = FiniteGroup::from_permutations(&["(1234)", "(12)"], &["x", "y"], 4).unwrap();
        assert_eq!(g.classes().iter().map(|c| c.len()).sum::<usize>(), 24);
        for a in g.elements() {
            assert_eq!(g.conjugacy_class(a).members.len() * g.centralizer(a).len(), 24);
            assert_eq!(24 % g.order(a), 0);
        }
    }
}
