//! The `mop` command line tool: thin wrappers around the library working on
//! `.mop` documents. Exit codes: 0 success, 1 domain error, 2 parse error.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::conditional::{self, LinearConditions};
use crate::document;
use crate::error::{Error, Result};
use crate::geometry::{self, RationalPoint};
use crate::marked::MarkedPoset;
use crate::oracle;
use crate::partition;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::sampling;

#[derive(Parser)]
#[command(name = "mop", version, about = "Marked posets and marked order polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a document and summarize the marked poset.
    Check(FileArgs),
    /// Dimension of the marked order polyhedron.
    Dim(FileArgs),
    /// Enumerate the face lattice as face partitions.
    Faces(FileArgs),
    /// Strictify, regularize and print the facet ↔ cover table.
    Facets(FileArgs),
    /// Enumerate the vertices (pointed polyhedra only).
    Vertices(FileArgs),
    /// Remove redundant covering relations.
    Regularize(FileArgs),
    /// Weighted 0-1 Minkowski decomposition of the marking.
    Minkowski(FileArgs),
    /// Kernel dimension of the tiling map at a point (needs conditions).
    #[command(name = "conditional-dim")]
    ConditionalDim(ConditionalArgs),
    /// Cross-validate the combinatorics against the geometric oracle.
    #[command(name = "oracle-verify")]
    OracleVerify(VerifyArgs),
}

#[derive(Args)]
struct FileArgs {
    /// Input document (.mop).
    file: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Bound on the element count for enumerations.
    #[arg(long, default_value_t = partition::DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
}

#[derive(Args)]
struct ConditionalArgs {
    #[command(flatten)]
    common: FileArgs,
    /// Coordinates of the unmarked elements, e.g. p=1,q=3/2.
    #[arg(long)]
    point: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: FileArgs,
    /// Also verify randomly sampled marked posets from this seed.
    #[arg(long)]
    seed: Option<u64>,
}

/// Parses the process arguments, runs the selected command and returns the
/// exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(a) => with_document(a, check),
        Command::Dim(a) => with_document(a, dim),
        Command::Faces(a) => with_document(a, faces),
        Command::Facets(a) => with_document(a, facets),
        Command::Vertices(a) => with_document(a, vertices),
        Command::Regularize(a) => with_document(a, regularize),
        Command::Minkowski(a) => with_document(a, minkowski),
        Command::ConditionalDim(a) => with_document(&a.common, |m, s, args| {
            conditional_dim(m, s, args, &a.point)
        }),
        Command::OracleVerify(a) => with_document(&a.common, |m, s, args| {
            oracle_verify(m, s, args, a.seed)
        }),
    };
    match outcome {
        Ok(report) => {
            print!("{report}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_parse() {
                2
            } else {
                1
            }
        }
    }
}

fn with_document<F>(args: &FileArgs, body: F) -> Result<String>
where
    F: FnOnce(MarkedPoset, Option<LinearConditions>, &FileArgs) -> Result<String>,
{
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| Error::parse(0, 0, format!("{}: {e}", args.file.display())))?;
    let (m, s) = document::parse_document(&text)?;
    body(m, s, args)
}

fn base_json(m: &MarkedPoset) -> Value {
    json!({
        "elements": m.poset().elements(),
        "covers": m.poset().cover_names(),
        "marks": m.marking_by_name()
            .iter()
            .map(|(k, v)| (k.clone(), format_rat(v)))
            .collect::<BTreeMap<String, String>>(),
    })
}

fn check(m: MarkedPoset, s: Option<LinearConditions>, args: &FileArgs) -> Result<String> {
    let report = m.regularity_report();
    if args.json {
        let mut v = base_json(&m);
        v["conditions"] = json!(s.map_or(0, |s| s.len()));
        v["strict"] = json!(m.is_strict());
        v["pointed"] = json!(geometry::is_pointed(&m));
        v["regular"] = json!(report.is_regular);
        return Ok(format!("{v}\n"));
    }
    Ok(format!(
        "elements: {}\ncovers: {}\nmarks: {}\nconditions: {}\nstrict: {}\npointed: {}\nregular: {}\n",
        m.len(),
        m.poset().covers().len(),
        m.marking().len(),
        s.map_or(0, |s| s.len()),
        m.is_strict(),
        geometry::is_pointed(&m),
        report.is_regular,
    ))
}

fn dim(m: MarkedPoset, _s: Option<LinearConditions>, args: &FileArgs) -> Result<String> {
    let d = geometry::dimension(&m);
    if args.json {
        let mut v = base_json(&m);
        v["dimension"] = json!(d);
        return Ok(format!("{v}\n"));
    }
    Ok(format!("dimension: {d}\n"))
}

fn faces(m: MarkedPoset, _s: Option<LinearConditions>, args: &FileArgs) -> Result<String> {
    let lattice = partition::enumerate_face_partitions_bounded(&m, args.max_elements)?;
    if args.json {
        let mut v = base_json(&m);
        v["faces"] = Value::Array(
            lattice
                .nodes
                .iter()
                .zip(&lattice.dims)
                .map(|(pi, &d)| {
                    json!({
                        "blocks": pi.blocks()
                            .iter()
                            .map(|b| b.iter().map(|&p| m.poset().element(p)).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "free_blocks": pi.free_flags(&m),
                        "dim": d,
                    })
                })
                .collect(),
        );
        return Ok(format!("{v}\n"));
    }
    let f = lattice.f_vector();
    let mut out = format!(
        "{} faces, f-vector ({})\n",
        lattice.len(),
        f.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
    );
    for (pi, d) in lattice.nodes.iter().zip(&lattice.dims) {
        out.push_str(&format!("dim {d}: {}\n", pi.canonical_encoding(m.poset())));
    }
    Ok(out)
}

fn facets(m: MarkedPoset, _s: Option<LinearConditions>, args: &FileArgs) -> Result<String> {
    let (strict, _) = m.strictify();
    let (regular, removed) = strict.regularize()?;
    if args.json {
        let mut v = base_json(&regular);
        v["removed_covers"] = json!(removed);
        return Ok(format!("{v}\n"));
    }
    let mut out = String::new();
    for (p, q) in &removed {
        out.push_str(&format!("removed cover {p}<{q}\n"));
    }
    out.push_str(&format!("{} facets:\n", regular.poset().covers().len()));
    for (p, q) in regular.poset().cover_names() {
        out.push_str(&format!("x_{p} <= x_{q}\n"));
    }
    Ok(out)
}

fn vertices(m: MarkedPoset, _s: Option<LinearConditions>, args: &FileArgs) -> Result<String> {
    let vs = geometry::vertices_bounded(&m, args.max_elements)?;
    let coords = |v: &RationalPoint| {
        v.coords().iter().map(format_rat).collect::<Vec<_>>()
    };
    if args.json {
        let mut out = base_json(&m);
        out["vertices"] = Value::Array(
            vs.iter().map(|v| json!({ "coords": coords(v) })).collect(),
        );
        return Ok(format!("{out}\n"));
    }
    let mut out = format!(
        "{} vertices ({})\n",
        vs.len(),
        m.poset().elements().join(" ")
    );
    for v in &vs {
        out.push_str(&coords(v).join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn regularize(m: MarkedPoset, _s: Option<LinearConditions>, args: &FileArgs) -> Result<String> {
    let (strict, _) = m.strictify();
    let (regular, removed) = strict.regularize()?;
    if args.json {
        let mut v = base_json(&regular);
        v["removed_covers"] = json!(removed);
        return Ok(format!("{v}\n"));
    }
    let mut out = String::new();
    for (p, q) in &removed {
        out.push_str(&format!("# removed cover {p}<{q}\n"));
    }
    out.push_str(&document::serialize_document(&regular, None));
    Ok(out)
}

fn minkowski(m: MarkedPoset, _s: Option<LinearConditions>, args: &FileArgs) -> Result<String> {
    let summands = geometry::minkowski_markings(&m)?;
    let verified = if geometry::is_pointed(&m) && m.len() <= args.max_elements {
        Some(geometry::minkowski_sum_check(&m)?)
    } else {
        None
    };
    if args.json {
        let mut v = base_json(&m);
        v["summands"] = Value::Array(
            summands
                .iter()
                .map(|s| {
                    json!({
                        "coefficient": format_rat(&s.coefficient),
                        "marks": s.marking()
                            .iter()
                            .map(|(k, v)| (k.clone(), format_rat(v)))
                            .collect::<BTreeMap<String, String>>(),
                    })
                })
                .collect(),
        );
        v["sum_check"] = json!(verified);
        return Ok(format!("{v}\n"));
    }
    let mut out = format!("{} summands\n", summands.len());
    for s in &summands {
        let marks = s
            .marking()
            .iter()
            .map(|(k, v)| format!("{k}={}", format_rat(v)))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("coefficient {}: {marks}\n", format_rat(&s.coefficient)));
    }
    match verified {
        Some(ok) => out.push_str(&format!("sum check: {}\n", if ok { "ok" } else { "FAILED" })),
        None => out.push_str("sum check: skipped\n"),
    }
    Ok(out)
}

fn parse_point(m: &MarkedPoset, spec: &str) -> Result<RationalPoint> {
    let mut coords: BTreeMap<String, Rat> = BTreeMap::new();
    for part in spec.split(',') {
        let Some((name, value)) = part.split_once('=') else {
            return Err(Error::parse(0, 0, format!("expected `element=value`, found `{part}`")));
        };
        coords.insert(name.trim().to_string(), parse_rat(value.trim())?);
    }
    RationalPoint::on(m, &coords)
}

fn conditional_dim(
    m: MarkedPoset,
    s: Option<LinearConditions>,
    args: &FileArgs,
    point: &str,
) -> Result<String> {
    let s = s.unwrap_or_else(|| LinearConditions::from_dense(vec![], vec![]));
    let x = parse_point(&m, point)?;
    if !conditional_membership(&m, &s, &x) {
        return Err(Error::NotInPolyhedron);
    }
    let pi = partition::partition_from_point(&m, &x)?;
    let map = conditional::tiling_map(&m, &s, &pi)?;
    let kernel = map.kernel_dimension();
    let matrix: Vec<Vec<String>> = map
        .entries
        .iter()
        .map(|row| row.iter().map(format_rat).collect())
        .collect();
    if args.json {
        let mut v = base_json(&m);
        v["kernel_dim"] = json!(kernel);
        v["tiling_matrix"] = json!(matrix);
        v["free_blocks"] = json!(map.free_blocks);
        return Ok(format!("{v}\n"));
    }
    let mut out = format!("kernel dimension: {kernel}\n");
    out.push_str(&format!(
        "free blocks: {}\n",
        map.free_blocks
            .iter()
            .map(|b| b.join("+"))
            .collect::<Vec<_>>()
            .join(" | ")
    ));
    out.push_str("tiling matrix:\n");
    for row in &matrix {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn conditional_membership(m: &MarkedPoset, s: &LinearConditions, x: &RationalPoint) -> bool {
    conditional::conditional_membership(m, s, x)
}

/// One cross-validation pass over a single marked poset; returns pass/fail
/// lines and whether everything agreed.
fn verify_one(m: &MarkedPoset, max_elements: usize) -> (String, bool) {
    let mut out = String::new();
    let mut ok = true;
    let mut record = |name: &str, good: bool, detail: String| {
        out.push_str(&format!(
            "{}: {name} {detail}\n",
            if good { "ok" } else { "MISMATCH" }
        ));
        ok &= good;
    };
    let h = geometry::h_representation(m);

    let combinatorial_dim = geometry::dimension(m) as i64;
    let oracle_dim = oracle::affine_dimension(&h);
    record(
        "dimension",
        combinatorial_dim == oracle_dim,
        format!("(combinatorial {combinatorial_dim}, oracle {oracle_dim})"),
    );

    let x = geometry::generic_point(m);
    record(
        "generic point",
        h.satisfies(x.coords()) && oracle::lp_feasible(&h, &[]).is_some(),
        String::new(),
    );

    if m.len() <= max_elements && h.inequalities.len() <= oracle::MAX_ORACLE_ROWS {
        match partition::enumerate_face_partitions_bounded(m, max_elements) {
            Ok(lattice) => {
                let oracle_faces = oracle::enumerate_faces(&h).expect("row bound checked");
                let mut from_oracle: Vec<String> = oracle_faces
                    .iter()
                    .map(|f| {
                        let w = RationalPoint::from_coords(f.witness.clone());
                        partition::partition_from_point(m, &w)
                            .expect("witness lies in the polyhedron")
                            .canonical_encoding(m.poset())
                    })
                    .collect();
                from_oracle.sort();
                from_oracle.dedup();
                let mut ours = lattice.encodings(m.poset());
                ours.sort();
                record(
                    "face partitions",
                    ours == from_oracle,
                    format!("(combinatorial {}, oracle {})", ours.len(), from_oracle.len()),
                );
            }
            Err(e) => record("face partitions", false, format!("({e})")),
        }
    }

    if geometry::is_pointed(m) && m.len() <= max_elements {
        let rep = oracle::enumerate_vertices_and_rays(&h);
        let ours: Vec<Vec<Rat>> = geometry::vertices_bounded(m, max_elements)
            .expect("pointed")
            .into_iter()
            .map(|v| v.coords().to_vec())
            .collect();
        record(
            "vertices",
            ours == rep.vertices && rep.pointed,
            format!("(combinatorial {}, oracle {})", ours.len(), rep.vertices.len()),
        );
    }

    (out, ok)
}

fn oracle_verify(
    m: MarkedPoset,
    _s: Option<LinearConditions>,
    args: &FileArgs,
    seed: Option<u64>,
) -> Result<String> {
    let (mut out, mut ok) = verify_one(&m, args.max_elements);
    if let Some(seed) = seed {
        let mut rng = sampling::rng(seed);
        for i in 0..10 {
            let random = sampling::random_marked_poset(&mut rng, 5, &[0, 1, 2]);
            let (lines, good) = verify_one(&random, args.max_elements);
            out.push_str(&format!("random instance {i}:\n"));
            for line in lines.lines() {
                out.push_str(&format!("  {line}\n"));
            }
            ok &= good;
        }
    }
    if !ok {
        // A mismatch is a domain failure, not a crash: report and exit 1.
        print!("{out}");
        return Err(Error::OracleMismatch);
    }
    Ok(out)
}
