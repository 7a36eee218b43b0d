//! Concrete polycyclic groups with integer matrix embeddings.
//!
//! Every embedding follows the word-order convention: the matrix of a word is
//! the product of its generator images in the order they appear, so a
//! relation `a_j^{a_i} = w` holds iff `M_i^-1 M_j M_i = M(w)`.

pub mod cyclotomic;
pub mod matrix;

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use thiserror::Error;

use crate::presentation::{strip_comment, PcPresentation, PresentationBuilder, PresentationError, ShapeError};
use crate::word::Word;

pub use cyclotomic::{cyc_mul, unit_matrix, CyclotomicInt};
pub use matrix::IntMatrix;

/// Largest `m` for which `dihedral(m)` carries its `m`-dimensional
/// permutation embedding.
pub const DIHEDRAL_EMBEDDING_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZooError {
    #[error("dihedral groups need m >= 3, got {0}")]
    DihedralTooSmall(u32),
    #[error("cyclotomic conductor {0} is not supported (use 3, 4, 7 or 11)")]
    UnsupportedCyclotomic(u32),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("not a unit: multiplication matrix has determinant {det}")]
    NotUnit { det: BigInt },
    #[error("group has no matrix embedding")]
    EmbeddingAbsent,
    #[error("generator g{index} is out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("embedding line {line}: {message}")]
    Embedding { line: usize, message: String },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

impl From<ShapeError> for ZooError {
    fn from(e: ShapeError) -> Self {
        ZooError::Presentation(e.into())
    }
}

/// Generator images in `GL(d, Z)` together with their inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    images: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
}

impl Embedding {
    /// Fails if dimensions differ or an image is not unimodular.
    pub fn new(images: Vec<IntMatrix>) -> Result<Self, String> {
        let dim = images.first().map(IntMatrix::dim).unwrap_or(0);
        let mut inverses = Vec::with_capacity(images.len());
        for (i, m) in images.iter().enumerate() {
            if m.dim() != dim {
                return Err(format!("image of g{} has dimension {}, expected {dim}", i + 1, m.dim()));
            }
            inverses.push(m.inverse().ok_or_else(|| format!("image of g{} is not invertible over Z", i + 1))?);
        }
        Ok(Embedding { images, inverses })
    }

    pub fn dim(&self) -> usize {
        self.images.first().map(IntMatrix::dim).unwrap_or(0)
    }

    pub fn images(&self) -> &[IntMatrix] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &IntMatrix {
        &self.images[gen]
    }

    pub fn inverse(&self, gen: usize) -> &IntMatrix {
        &self.inverses[gen]
    }

    fn block_diag(a: &Embedding, b: &Embedding) -> Embedding {
        let (ia, ib) = (IntMatrix::identity(a.dim()), IntMatrix::identity(b.dim()));
        let images = a
            .images
            .iter()
            .map(|m| IntMatrix::block_diag(m, &ib))
            .chain(b.images.iter().map(|m| IntMatrix::block_diag(&ia, m)))
            .collect();
        let inverses = a
            .inverses
            .iter()
            .map(|m| IntMatrix::block_diag(m, &ib))
            .chain(b.inverses.iter().map(|m| IntMatrix::block_diag(&ia, m)))
            .collect();
        Embedding { images, inverses }
    }
}

/// A presentation with an optional matrix embedding and, for finite groups,
/// the group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    presentation: PcPresentation,
    embedding: Option<Embedding>,
    order: Option<BigInt>,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, presentation: PcPresentation, embedding: Option<Embedding>) -> Self {
        let order = presentation.finite_order();
        GroupSpec { name: name.into(), presentation, embedding, order }
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.presentation
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    pub fn order(&self) -> Option<&BigInt> {
        self.order.as_ref()
    }

    pub fn n(&self) -> usize {
        self.presentation.n()
    }

    pub fn hirsch_length(&self) -> usize {
        self.presentation.hirsch_length()
    }

    /// Presentation text plus an optional `[embedding]` section.
    pub fn to_text(&self) -> String {
        let mut out = self.presentation.to_text();
        if let Some(emb) = &self.embedding {
            out.push_str("[embedding]\n");
            for (i, m) in emb.images.iter().enumerate() {
                let _ = writeln!(out, "mat {} = {m}", i + 1);
            }
        }
        out
    }

    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self, ZooError> {
        let mut pres_text = String::new();
        let mut emb_lines = Vec::new();
        let mut in_embedding = false;
        for (k, line) in text.lines().enumerate() {
            if !in_embedding && strip_comment(line) == "[embedding]" {
                in_embedding = true;
                // keep line numbering of the presentation part intact
                pres_text.push('\n');
                continue;
            }
            if in_embedding {
                emb_lines.push((k + 1, strip_comment(line)));
            } else {
                pres_text.push_str(line);
                pres_text.push('\n');
            }
        }
        let presentation = PcPresentation::parse(&pres_text)?;
        let embedding = if in_embedding { Some(parse_embedding(presentation.n(), &emb_lines)?) } else { None };
        Ok(GroupSpec::new(name, presentation, embedding))
    }

    pub fn load(path: &Path) -> Result<Self, ZooError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ZooError::Io { path: path.display().to_string(), message: e.to_string() })?;
        let name = path.file_stem().map_or_else(|| "group".to_string(), |s| s.to_string_lossy().into_owned());
        Self::parse(name, &text)
    }
}

fn parse_embedding(n: usize, lines: &[(usize, &str)]) -> Result<Embedding, ZooError> {
    let mut images: Vec<Option<IntMatrix>> = vec![None; n];
    let mut last_line = 0;
    for &(line, l) in lines {
        last_line = line;
        if l.is_empty() {
            continue;
        }
        let err = |message: String| ZooError::Embedding { line, message };
        let (lhs, rhs) = l.split_once('=').ok_or_else(|| err("expected `mat <i> = <rows>`".into()))?;
        let idx = match lhs.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["mat", i] => i.parse::<usize>().ok().filter(|&i| i >= 1 && i <= n),
            _ => None,
        }
        .ok_or_else(|| err(format!("bad matrix key `{}`", lhs.trim())))?;
        let m: IntMatrix = rhs.parse().map_err(|e| err(format!("{e}")))?;
        if images[idx - 1].replace(m).is_some() {
            return Err(err(format!("duplicate matrix for g{idx}")));
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| ZooError::Embedding { line: last_line, message: format!("missing matrix for g{}", i + 1) })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Embedding::new(images).map_err(|message| ZooError::Embedding { line: last_line, message })
}

/// Product of generator-image powers in word order.
pub fn matrix_of_word(g: &GroupSpec, w: &Word) -> Result<IntMatrix, ZooError> {
    let emb = g.embedding.as_ref().ok_or(ZooError::EmbeddingAbsent)?;
    let mut acc = IntMatrix::identity(emb.dim());
    for s in w.syllables() {
        if s.gen >= g.n() {
            return Err(ZooError::GeneratorOutOfRange { index: s.gen + 1, n: g.n() });
        }
        let p = emb.image(s.gen).pow(&s.exp, emb.inverse(s.gen));
        acc = &acc * &p;
    }
    Ok(acc)
}

fn gen_word(g: usize) -> Word {
    Word::generator(g)
}

/// `⟨a_1, a_2 | a_1^2, a_2^m, a_2^{a_1} = a_2^{m-1}⟩`, order `2m`.
pub fn dihedral(m: u32) -> Result<GroupSpec, ZooError> {
    if m < 3 {
        return Err(ZooError::DihedralTooSmall(m));
    }
    let mut b = PresentationBuilder::new(2);
    b.order(0, 2)?.order(1, m)?.conj(1, 0, Word::from_pairs([(1, m as i64 - 1)]))?;
    let pres = b.build()?;
    let embedding = if m == 4 {
        let refl = IntMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]).expect("square");
        let rot = IntMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]).expect("square");
        Some(Embedding::new(vec![refl, rot]).expect("unimodular"))
    } else if m <= DIHEDRAL_EMBEDDING_CAP {
        let d = m as usize;
        let perm = |f: &dyn Fn(usize) -> usize| {
            let mut p = IntMatrix::zero(d);
            for i in 0..d {
                p.set(i, f(i), BigInt::from(1));
            }
            p
        };
        let refl = perm(&|i| (d - i) % d);
        let rot = perm(&|i| (i + 1) % d);
        Some(Embedding::new(vec![refl, rot]).expect("unimodular"))
    } else {
        None
    };
    let name = if m == 4 { "d4".to_string() } else { format!("dihedral:{m}") };
    Ok(GroupSpec::new(name, pres, embedding))
}

/// Integer Heisenberg group with `a_3 = [a_2, a_1]` central.
pub fn heisenberg() -> GroupSpec {
    let mut b = PresentationBuilder::new(3);
    b.conj(1, 0, Word::from_pairs([(1, 1), (2, 1)]))
        .and_then(|b| b.conj_inv(1, 0, Word::from_pairs([(1, 1), (2, -1)])))
        .and_then(|b| b.conj(2, 0, gen_word(2)))
        .and_then(|b| b.conj_inv(2, 0, gen_word(2)))
        .and_then(|b| b.conj(2, 1, gen_word(2)))
        .and_then(|b| b.conj_inv(2, 1, gen_word(2)))
        .expect("well-formed relations");
    let pres = b.build().expect("complete presentation");
    let e = |r: usize, c: usize| {
        let mut m = IntMatrix::identity(3);
        m.set(r, c, BigInt::from(1));
        m
    };
    let embedding = Embedding::new(vec![e(1, 2), e(0, 1), e(0, 2)]).expect("unitriangular");
    GroupSpec::new("heisenberg", pres, Some(embedding))
}

/// `g × h` with the generators of `h` following those of `g`.
pub fn direct_product(g: &GroupSpec, h: &GroupSpec) -> GroupSpec {
    let (pg, ph) = (g.presentation(), h.presentation());
    let (ng, nh) = (pg.n(), ph.n());
    let shift = |w: &Word| Word::from_pairs(w.syllables().iter().map(|s| (s.gen + ng, s.exp.clone())));
    let mut b = PresentationBuilder::new(ng + nh);
    let result: Result<(), ShapeError> = (|| {
        for (p, off, sh) in [(pg, 0, false), (ph, ng, true)] {
            let tr = |w: &Word| if sh { shift(w) } else { w.clone() };
            for i in 0..p.n() {
                if let Some(r) = p.order(i) {
                    b.order(i + off, r.clone())?;
                }
                if let Some(w) = p.power_rhs(i) {
                    b.power(i + off, tr(w))?;
                }
                for j in i + 1..p.n() {
                    b.conj(j + off, i + off, tr(p.conj(j, i)))?;
                    if let Some(w) = p.conj_inv(j, i) {
                        b.conj_inv(j + off, i + off, tr(w))?;
                    }
                }
            }
        }
        for i in 0..ng {
            for j in ng..ng + nh {
                b.conj(j, i, gen_word(j))?;
                if !pg.is_finite_gen(i) {
                    b.conj_inv(j, i, gen_word(j))?;
                }
            }
        }
        Ok(())
    })();
    result.expect("factor presentations are well formed");
    let pres = b.build().expect("complete presentation");
    let embedding = match (g.embedding(), h.embedding()) {
        (Some(a), Some(b)) => Some(Embedding::block_diag(a, b)),
        _ => None,
    };
    GroupSpec::new(format!("product:{},{}", g.name, h.name), pres, embedding)
}

/// Unit generators used for `cyclotomic_group(r)`: the torsion generator
/// with its order, then the infinite-order cyclotomic units.
pub fn cyclotomic_unit_generators(r: u32) -> Result<(CyclotomicInt, u32, Vec<CyclotomicInt>), ZooError> {
    cyclotomic::check_supported(r)?;
    if r == 4 {
        return Ok((CyclotomicInt::zeta_power(4, 1)?, 4, Vec::new()));
    }
    let torsion = CyclotomicInt::zeta_power(r, 1)?.neg();
    let units =
        (2..=(r as usize - 1) / 2).map(|a| CyclotomicInt::cyclotomic_unit(r, a)).collect::<Result<Vec<_>, _>>()?;
    Ok((torsion, 2 * r, units))
}

/// The split extension `O ⋊ U'` of `O = Z[ζ_r]` by the torsion units and
/// the cyclotomic units `(1 - ζ^a)/(1 - ζ)`, `2 <= a <= (r-1)/2`.
///
/// Generators: torsion unit, infinite units, then the power basis of `O`.
/// A unit `u` acts on `O` by multiplication, so `o_k^u` is row `k` of
/// [`unit_matrix`]. The embedding sends `(u, o)` to `[[M_u, 0], [o, 1]]`.
pub fn cyclotomic_group(r: u32) -> Result<GroupSpec, ZooError> {
    let (torsion, torsion_order, units) = cyclotomic_unit_generators(r)?;
    let d = cyclotomic::phi(r);
    let nu = 1 + units.len();
    let n = nu + d;
    let all_units: Vec<&CyclotomicInt> = std::iter::once(&torsion).chain(units.iter()).collect();
    let mats = all_units.iter().map(|u| unit_matrix(r, u)).collect::<Result<Vec<_>, _>>()?;
    let invs: Vec<IntMatrix> = mats.iter().map(|m| m.inverse().expect("unit matrix is unimodular")).collect();
    let row_word =
        |m: &IntMatrix, k: usize| Word::from_pairs(m.row(k).iter().cloned().enumerate().map(|(l, c)| (nu + l, c)));

    let mut b = PresentationBuilder::new(n);
    b.order(0, torsion_order)?;
    for j in 1..nu {
        for i in 0..j {
            b.conj(j, i, gen_word(j))?;
            if i > 0 {
                b.conj_inv(j, i, gen_word(j))?;
            }
        }
    }
    for k in 0..d {
        let j = nu + k;
        for (i, (m, inv)) in mats.iter().zip(&invs).enumerate() {
            b.conj(j, i, row_word(m, k))?;
            if i > 0 {
                b.conj_inv(j, i, row_word(inv, k))?;
            }
        }
        for i in nu..j {
            b.conj(j, i, gen_word(j))?;
            b.conj_inv(j, i, gen_word(j))?;
        }
    }
    let pres = b.build()?;

    let affine_unit = |m: &IntMatrix| IntMatrix::block_diag(m, &IntMatrix::identity(1));
    let translation = |k: usize| {
        let mut t = IntMatrix::identity(d + 1);
        t.set(d, k, BigInt::from(1));
        t
    };
    let images = mats.iter().map(affine_unit).chain((0..d).map(translation)).collect();
    let embedding = Embedding::new(images).expect("affine images are unimodular");
    Ok(GroupSpec::new(format!("cyclotomic:{r}"), pres, Some(embedding)))
}

/// Resolves a builtin name (`d4`, `dihedral:<m>`, `heisenberg`,
/// `cyclotomic:<r>`, `product:<a>,<b>`) or reads a group file.
pub fn resolve_group(spec: &str) -> Result<GroupSpec, ZooError> {
    if let Some(g) = builtin(spec)? {
        return Ok(g);
    }
    let path = Path::new(spec);
    if path.exists() {
        GroupSpec::load(path)
    } else {
        Err(ZooError::UnknownGroup(spec.to_string()))
    }
}

/// `Ok(None)` when `spec` is not a builtin name.
pub fn builtin(spec: &str) -> Result<Option<GroupSpec>, ZooError> {
    let bad = || ZooError::UnknownGroup(spec.to_string());
    let g = match spec.split_once(':') {
        None => match spec {
            "d4" => dihedral(4)?,
            "heisenberg" => heisenberg(),
            _ => return Ok(None),
        },
        Some(("dihedral", m)) => dihedral(m.parse().map_err(|_| bad())?)?,
        Some(("cyclotomic", r)) => cyclotomic_group(r.parse().map_err(|_| bad())?)?,
        Some(("product", rest)) => {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            let a = builtin(a)?.ok_or_else(bad)?;
            let b = builtin(b)?.ok_or_else(bad)?;
            direct_product(&a, &b)
        }
        Some(_) => return Ok(None),
    };
    Ok(Some(g))
}

/// Every builtin group exercised by the test suites.
pub fn builtin_suite() -> Vec<GroupSpec> {
    let d4 = dihedral(4).expect("d4");
    let h = heisenberg();
    vec![
        d4.clone(),
        dihedral(6).expect("d6"),
        dihedral(1024).expect("d1024"),
        h.clone(),
        direct_product(&d4, &d4),
        direct_product(&h, &h),
        cyclotomic_group(3).expect("r=3"),
        cyclotomic_group(4).expect("r=4"),
        cyclotomic_group(7).expect("r=7"),
        cyclotomic_group(11).expect("r=11"),
    ]
}
