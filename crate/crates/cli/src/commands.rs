use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use pwgl::circle::{PWMoebius, Smoothness};
use pwgl::pwgl::{self as pw, PWMap};
use pwgl::ratgeom::rat::fmt_vec;
use pwgl::torusmap::perm::grid_point;
use pwgl::torusmap::{classify, fixed_set, group_certificate, FixedSetReport, ToralAffine};
use pwgl::wordsearch::{self, BallOptions, BallReport, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::load::{self, InputError, Result};
use crate::{Cli, Command};

pub struct Output {
    pub code: u8,
    pub json: Value,
    pub text: String,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Self { code: 0, json, text: text.into() }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn point(v: &[pwgl::ratgeom::Rat]) -> String {
    format!("({})", fmt_vec(v).join(", "))
}

/// Loads a map and refuses invalid operands with exit code 1.
fn load_valid(path: &str) -> Result<std::result::Result<PWMap, Output>> {
    let f = load::load_map(path)?;
    let report = pw::validate(&f)?;
    if report.valid {
        Ok(Ok(f))
    } else {
        Ok(Err(Output { code: 1, json: to_value(&report), text: format!("{path}: {report}") }))
    }
}

macro_rules! valid_or_return {
    ($path:expr) => {
        match load_valid($path)? {
            Ok(f) => f,
            Err(out) => return Ok(out),
        }
    };
}

fn write_map(path: &str, f: &PWMap) -> Result<()> {
    fs::write(path, f.to_json_string() + "\n").map_err(|e| InputError(format!("{path}: {e}")))
}

fn names(args: &[String]) -> Vec<String> {
    args.iter().enumerate().map(|(i, a)| load::generator_name(a, i)).collect()
}

fn fixed_text(fs: &FixedSetReport) -> String {
    if fs.is_empty {
        return "fixed set empty".into();
    }
    let count = fs.component_count.as_ref().map(|c| c.to_string()).unwrap_or_default();
    format!(
        "fixed set: {count} component(s) of dimension {}, codimension {}, {}",
        fs.dim,
        fs.n - fs.dim,
        if fs.is_small { "small" } else { "not small" }
    )
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { map } => {
            let f = load::load_map(map)?;
            let r = pw::validate(&f)?;
            Ok(Output { code: if r.valid { 0 } else { 1 }, json: to_value(&r), text: r.to_string() })
        }
        Command::Compose { f, g, output } => {
            let (a, b) = (valid_or_return!(f), valid_or_return!(g));
            let h = pw::compose(&a, &b)?;
            write_map(output, &h)?;
            let r = pw::validate(&h)?;
            let json = json!({"output": output, "pieces": h.piece_count(), "valid": r.valid});
            Ok(Output { code: if r.valid { 0 } else { 1 }, json, text: format!("wrote {output}: {r}") })
        }
        Command::Invert { f, output } => {
            let a = valid_or_return!(f);
            let h = pw::inverse(&a)?;
            write_map(output, &h)?;
            let r = pw::validate(&h)?;
            let json = json!({"output": output, "pieces": h.piece_count(), "valid": r.valid});
            Ok(Output { code: if r.valid { 0 } else { 1 }, json, text: format!("wrote {output}: {r}") })
        }
        Command::Apply { f, point: p } => {
            let a = load::load_map(f)?;
            let x = load::parse_point(p)?;
            let y = a.apply(&x)?;
            Ok(Output::ok(json!({"point": fmt_vec(&x), "image": fmt_vec(&y)}), point(&y)))
        }
        Command::Homology { f } => {
            let h = load::load_map(f)?.homology()?;
            Ok(Output::ok(json!({"homology": h.to_strings()}), h.to_string()))
        }
        Command::TorsionPerm { f, q } => {
            let a = load::load_map(f)?;
            let p = a.torsion_perm(*q)?;
            let cycles = p.cycles();
            let mut text = format!("{} points, order {}", p.len(), p.order());
            for c in &cycles {
                let pts: Vec<String> = c.iter().map(|&i| point(&grid_point(i, *q, a.dim()))).collect();
                write!(text, "\n  {}", pts.join(" -> ")).unwrap();
            }
            let json = json!({"q": q, "images": p.images(), "cycles": cycles, "order": p.order()});
            Ok(Output::ok(json, text))
        }
        Command::Equals { f, g } => {
            let eq = load::load_map(f)?.equals(&load::load_map(g)?)?;
            Ok(Output::ok(json!({"equal": eq}), eq.to_string()))
        }
        Command::FixedSet { element } => {
            let g = load::load_element(element)?;
            let fs = fixed_set(&g);
            let mut text = fixed_text(&fs);
            if !fs.is_empty {
                let reps: Vec<String> = fs.representatives.iter().take(8).map(|r| point(r)).collect();
                write!(text, "\nrepresentatives: {}", reps.join(" ")).unwrap();
                if fs.representatives.len() > 8 || fs.representatives_truncated {
                    text.push_str(" ...");
                }
            }
            Ok(Output::ok(to_value(&fs), text))
        }
        Command::Classify { element } => {
            let g = load::load_element(element)?;
            let c = classify(&g);
            let fs = fixed_set(&g);
            let kind = if c.hyperbolic {
                "hyperbolic".to_string()
            } else if let Some(k) = c.finite_order {
                format!("finite order {k}")
            } else if c.unipotent {
                "unipotent".to_string()
            } else {
                "not hyperbolic".to_string()
            };
            let text = format!("{kind}, {}\ncharacteristic polynomial {}", fixed_text(&fs), c.charpoly);
            Ok(Output::ok(json!({"kind": kind, "classification": c, "fixed_set": fs}), text))
        }
        Command::Certificate { gens, radius } => {
            let gs = gens.iter().map(|a| load::load_element(a)).collect::<Result<Vec<ToralAffine>>>()?;
            let r = group_certificate(&gs, *radius)?;
            let n = names(gens);
            let mut text = format!(
                "radius {}: {} elements, {} nontrivial\nsmall fixed sets: {}\nall hyperbolic: {}\n",
                r.radius,
                r.element_count,
                r.nonidentity_count,
                if r.small_fixed_sets_hold { "yes" } else { "no" },
                if r.all_hyperbolic { "yes" } else { "no" },
            );
            if r.empty_fixed_sets > 0 {
                writeln!(text, "elements with empty fixed set: {}", r.empty_fixed_sets).unwrap();
            }
            for w in r.small_failures.iter().take(5) {
                writeln!(text, "  large fixed set: {}", w.render(&n)).unwrap();
            }
            for w in r.hyperbolic_failures.iter().take(5) {
                writeln!(text, "  not hyperbolic: {}", w.render(&n)).unwrap();
            }
            text.push_str(&r.scope_note);
            Ok(Output::ok(to_value(&r), text))
        }
        Command::Tgamma { f, gamma } => {
            let a = load::load_map(f)?;
            let g = load::load_element(gamma)?;
            let t = pw::t_gamma(&a, &g)?;
            let j = t.to_json();
            let mut text = format!("T_gamma for {}: {} slice(s), volume {}", g, j.slices.len(), t.volume()?);
            for s in &j.slices {
                let vs: Vec<String> = s.vertices.iter().map(|v| format!("({})", v.join(", "))).collect();
                write!(text, "\n  piece {} dim {}: {}", s.piece, s.dim, vs.join(" ")).unwrap();
            }
            Ok(Output::ok(to_value(&j), text))
        }
        Command::InnerCert { f, gens, radius } => {
            let a = load::load_map(f)?;
            let gs = gens.iter().map(|x| load::load_element(x)).collect::<Result<Vec<ToralAffine>>>()?;
            let c = pw::inner_certificate(&a, &gs, *radius)?;
            let n = names(gens);
            let mut text = format!(
                "{} within radius {}",
                if c.success { "certified" } else { "not certified" },
                c.radius
            );
            for (i, w) in c.words.iter().enumerate() {
                let shown = w.as_ref().map(|w| w.render(&n)).unwrap_or_else(|| "not found".into());
                write!(text, "\n  piece {i} ({}): {shown}", a.pieces()[i].map).unwrap();
            }
            Ok(Output { code: 0, json: to_value(&c), text })
        }
        Command::Germ { f, at } => {
            let a = load::load_map(f)?;
            let g = pw::germ_at(&a, &load::parse_point(at)?)?;
            let j = g.to_json();
            let mut text = format!("germ at {}: {} raw sector(s)", point(&g.basepoint), g.sectors.len());
            if let Some(ang) = &j.angular {
                for s in ang {
                    if s.full {
                        write!(text, "\n  full turn: {}", s.matrix).unwrap();
                    } else {
                        write!(text, "\n  ({}) to ({}): {}", s.from.join(", "), s.to.join(", "), s.matrix).unwrap();
                    }
                }
            } else {
                for s in &j.sectors {
                    write!(text, "\n  piece {} normals {:?}: {}", s.piece, s.normals, s.matrix).unwrap();
                }
            }
            Ok(Output::ok(to_value(&j), text))
        }
        Command::Ball { gens, radius, piece_budget } => {
            let gs = gens.iter().map(|a| load::load_generator(a)).collect::<Result<Vec<PWMap>>>()?;
            let opts = BallOptions { piece_budget: *piece_budget, ..BallOptions::default() };
            let ball = wordsearch::ball_with(&gs, *radius, &opts)?;
            let r = BallReport::from_ball(&ball);
            let n = names(gens);
            let mut text = format!(
                "radius {}: {} elements\nspheres: {:?}\ncumulative: {:?}\nrelations found: {}\nfingerprint collisions: {}",
                r.radius,
                r.element_count,
                r.sphere_sizes,
                r.cumulative,
                r.relations.len(),
                r.fingerprint_collisions
            );
            for rep in r.representatives.iter().take(40) {
                write!(text, "\n  {} ({} pieces)", rep.word.render(&n), rep.pieces).unwrap();
            }
            Ok(Output::ok(to_value(&r), text))
        }
        Command::Relations { gens, radius } => {
            let gs = gens.iter().map(|a| load::load_generator(a)).collect::<Result<Vec<PWMap>>>()?;
            let rels = wordsearch::relations(&gs, *radius)?;
            let n = names(gens);
            let text = if rels.is_empty() {
                format!("no relations up to length {radius}")
            } else {
                rels.iter()
                    .map(|r| format!("{} = {}    relator {}", r.lhs.render(&n), r.rhs.render(&n), r.relator.render(&n)))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Output::ok(to_value(&rels), text))
        }
        Command::CircleValidate { map } => {
            let f = load::load_circle(map)?;
            let r = f.validate();
            Ok(Output { code: if r.valid { 0 } else { 1 }, json: to_value(&r), text: r.to_string() })
        }
        Command::CircleSmoothness { map, at } => {
            let f = load::load_circle(map)?;
            let p = load::parse_circle_point(at)?;
            let s = f.smoothness_order(&p)?;
            let order = match s {
                Smoothness::Order(k) => json!(k),
                other => json!(other.to_string()),
            };
            Ok(Output::ok(json!({"at": p.to_string(), "order": order}), format!("smoothness order at {p}: {s}")))
        }
        Command::Fixtures { dir, random } => fixtures(dir, *random, cli.seed),
    }
}

fn fixtures(dir: &str, random: usize, seed: u64) -> Result<Output> {
    let d = Path::new(dir);
    fs::create_dir_all(d).map_err(|e| InputError(format!("{dir}: {e}")))?;
    let mut written = Vec::new();
    let mut put = |name: &str, body: String| -> Result<()> {
        let p = d.join(name);
        fs::write(&p, body + "\n").map_err(|e| InputError(format!("{}: {e}", p.display())))?;
        written.push(p.display().to_string());
        Ok(())
    };
    put("adams.json", PWMap::adams().to_json_string())?;
    put("identity.json", PWMap::identity(2).to_json_string())?;
    put("circle.json", PWMoebius::example().to_json_string())?;
    let gens = [
        ToralAffine::from_rows(&[[0, -1], [1, 0]]).expect("unimodular"),
        ToralAffine::from_rows(&[[1, 1], [0, 1]]).expect("unimodular"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let len = rng.gen_range(1..=8);
        let signed: Vec<i64> = (0..len).map(|_| [1, -1, 2, -2][rng.gen_range(0..4)]).collect();
        let g = wordsearch::evaluate(&gens, &Word::from_signed(&signed))?;
        put(&format!("random_{i:03}.json"), serde_json::to_string_pretty(&g.to_json()).expect("serializable"))?;
    }
    let text = written.iter().map(|w| format!("wrote {w}")).collect::<Vec<_>>().join("\n");
    Ok(Output::ok(json!({"written": written}), text))
}
