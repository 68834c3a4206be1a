//! Acceptance suite: one test (and one pass/fail line) per criterion.
//! Every check is exact integer or byte equality — tolerance zero.

use std::process::Command;
use std::sync::Arc;

use num::{BigInt, BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nph::bundle::LineCocycle;
use nph::complex::{genus_surface, klein_bottle, ngon, octahedron, projective_plane, torus_grid, SurfaceComplex};
use nph::cover::{resolve, verify_resolution};
use nph::degree::{compose, degree_circle, degree_s0, lefschetz, lens_map, StructuredS0Map};
use nph::field::{CircleNField, NField};
use nph::gen;
use nph::index::{local_index, sigma_minus, verify_circle, verify_theorem, Mode};

const RANDOM_DRAWS: u64 = 100;

fn orientable_bases() -> Vec<(&'static str, Arc<SurfaceComplex>)> {
    vec![
        ("sphere", Arc::new(octahedron())),
        ("torus", Arc::new(torus_grid(4))),
        ("genus-2", Arc::new(genus_surface(2))),
    ]
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Shipped generator fields for one (n, base): quotient of the tangent-like
/// line field and the scaled-sections family, plus the n = 1 tangent-like
/// field itself.
fn shipped_fields(base: &Arc<SurfaceComplex>, n: usize) -> Vec<NField> {
    let mut fields = vec![
        gen::quotient_field(base, n).unwrap(),
        gen::scaled_sections_field(base, n, 0, 0).unwrap(),
    ];
    if n == 1 {
        fields.push(gen::tangent_like_field(base));
    }
    fields
}

#[test]
fn criterion_01_classical_engine() {
    let f = gen::tangent_like_field(&Arc::new(octahedron()));
    let v = verify_theorem(&f, Mode::Integer).unwrap();
    assert!(v.pass);
    assert_eq!(v.lhs, BigInt::from(2));

    let f = gen::tangent_like_field(&Arc::new(genus_surface(2)));
    let v = verify_theorem(&f, Mode::Integer).unwrap();
    assert!(v.pass);
    assert_eq!(v.lhs, BigInt::from(-2));
    println!("criterion 01: PASS — n=1 index sums equal χ (2 on the sphere, -2 on genus 2)");
}

#[test]
fn criterion_02_main_theorem_integer() {
    for (_, base) in orientable_bases() {
        for n in 1..=4usize {
            for f in shipped_fields(&base, n) {
                let e = f.bundle().euler_number().unwrap();
                let v = verify_theorem(&f, Mode::Integer).unwrap();
                assert!(v.pass);
                assert_eq!(v.lhs, BigInt::from(n as i64) * &e);
            }
            for seed in 0..RANDOM_DRAWS {
                let f = gen::random_nfield(&base, n, seed);
                let e = f.bundle().euler_number().unwrap();
                let v = verify_theorem(&f, Mode::Integer).unwrap();
                assert!(v.pass);
                assert_eq!(v.lhs, BigInt::from(n as i64) * &e);
            }
        }
    }
    println!(
        "criterion 02: PASS — Σ indices = n·e for all shipped and {} random fields per (n, base)",
        RANDOM_DRAWS
    );
}

#[test]
fn criterion_03_main_theorem_mod2() {
    let bases: Vec<(&str, Arc<SurfaceComplex>, i64)> = vec![
        ("rp2", Arc::new(projective_plane()), 1),
        ("klein", Arc::new(klein_bottle()), 0),
    ];
    for (_, base, chi) in &bases {
        assert_eq!(base.euler_characteristic(), *chi);
        let f = gen::tangent_like_field(base);
        let v = verify_theorem(&f, Mode::Mod2).unwrap();
        assert!(v.pass);
        assert_eq!(v.rhs, BigInt::from(chi.rem_euclid(2)));
        for n in 1..=4usize {
            for seed in 0..RANDOM_DRAWS {
                let f = gen::random_nfield(base, n, seed);
                let v = verify_theorem(&f, Mode::Mod2).unwrap();
                assert!(v.pass);
                let w = f.bundle().sw_top(0).unwrap() as i64;
                assert_eq!(v.rhs, BigInt::from((n as i64 * w).rem_euclid(2)));
            }
        }
    }
    // RP² with odd n: parity 1.
    let rp2 = Arc::new(projective_plane());
    for n in [1usize, 3] {
        let v = verify_theorem(&gen::random_nfield(&rp2, n, 0), Mode::Mod2).unwrap();
        assert_eq!(v.lhs, BigInt::from(1));
        assert_eq!(v.rhs, BigInt::from(1));
    }
    println!(
        "criterion 03: PASS — Σ ≡ n·w₂ mod 2 on RP²/Klein over {} random fields per (n, base)",
        RANDOM_DRAWS
    );
}

#[test]
fn criterion_04_lemon_quartet() {
    let f = gen::sphere_line_field();
    assert_eq!(f.bundle().euler_number().unwrap(), BigInt::from(2));
    let v = verify_theorem(&f, Mode::Integer).unwrap();
    assert!(v.pass);
    assert_eq!(v.lhs, BigInt::from(4));
    let singular: Vec<_> = v.vertices.iter().filter(|r| !r.regular).collect();
    assert_eq!(singular.len(), 4);
    for r in singular {
        assert_eq!(r.index, BigInt::from(1));
    }
    println!("criterion 04: PASS — lemon quartet: four index-1 singularities, Σ = 4 = 2e");
}

#[test]
fn criterion_05_sigma_minus_parity() {
    let mut draws = 0u64;
    let bases = [
        Arc::new(octahedron()),
        Arc::new(torus_grid(4)),
        Arc::new(genus_surface(2)),
        Arc::new(projective_plane()),
        Arc::new(klein_bottle()),
    ];
    for base in &bases {
        for seed in 0..RANDOM_DRAWS {
            let f = gen::random_nfield(base, 2, seed);
            assert_eq!(sigma_minus(&f).unwrap().1, 0);
            draws += 1;
        }
    }
    for f in [
        gen::sphere_line_field(),
        gen::quotient_field(&Arc::new(octahedron()), 2).unwrap(),
        gen::scaled_sections_field(&Arc::new(torus_grid(4)), 2, 0, 0).unwrap(),
    ] {
        assert_eq!(sigma_minus(&f).unwrap().1, 0);
        draws += 1;
    }
    assert!(draws >= 500);
    println!(
        "criterion 05: PASS — sigma_minus parity 0 on all {} two-valued draws",
        draws
    );
}

#[test]
fn criterion_06_lens_circles() {
    for n in 1..=12usize {
        for d in -12i64..=12 {
            let m = gen::lens_circle(n, d);
            let expected = if d == 0 { n } else { gcd(d.unsigned_abs() as usize, n) };
            assert_eq!(m.components().len(), expected);
            assert_eq!(degree_circle(&m).unwrap(), BigInt::from(d));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let (n1, d1) = (rng.gen_range(1..=5usize), rng.gen_range(-6i64..=6));
        let (n2, d2) = (rng.gen_range(1..=5usize), rng.gen_range(-6i64..=6));
        let inner = lens_map(n1, d1, 16);
        let outer = lens_map(n2, d2, 16);
        let composed = compose(&outer, &inner).unwrap();
        assert_eq!(degree_circle(&composed).unwrap(), BigInt::from(d1 * d2));
    }
    println!(
        "criterion 06: PASS — lens sweep |d| ≤ 12, n ≤ 12 exact; 200 seeded compositions multiplicative"
    );
}

#[test]
fn criterion_07_s0_and_circle_manifolds() {
    // Exhaustive S⁰: every n-valued sign map for n ≤ 3.
    for n in 1..=3usize {
        for mask in 0..(1u32 << (2 * n)) {
            let mut pts = Vec::new();
            for i in 0..n {
                pts.push((1i8, if mask >> i & 1 == 1 { 1i8 } else { -1 }));
            }
            for i in n..2 * n {
                pts.push((-1i8, if mask >> i & 1 == 1 { 1i8 } else { -1 }));
            }
            let m = StructuredS0Map::new(pts).unwrap();
            let deg = degree_s0(&m);
            assert!((-(n as i64)..=n as i64).contains(&deg));
            assert_eq!(lefschetz(deg, n as u64, 1), m.coincidences() as i64);
        }
    }

    // Trivial line cocycles: Σ circle_index = 0.
    let rat = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
    let f = CircleNField::build(
        LineCocycle::trivial(ngon(6)),
        (0..6).map(|e| vec![rat(1, 1), rat(e as i64 + 2, 1)]).collect(),
    )
    .unwrap();
    let v = verify_circle(&f, Mode::Integer).unwrap();
    assert!(v.pass);
    assert_eq!(v.lhs, BigInt::zero());
    let signs = [1i64, 1, -1, -1];
    let f = CircleNField::build_explicit(
        LineCocycle::trivial(ngon(4)),
        signs.iter().map(|&s| vec![rat(s, 1)]).collect(),
        vec![vec![0]; 4],
    )
    .unwrap();
    let v = verify_circle(&f, Mode::Integer).unwrap();
    assert!(v.pass);
    assert_eq!(v.lhs, BigInt::zero());

    // Möbius cocycle: parity n·w₁ with w₁ = 1.
    let line = LineCocycle::moebius(ngon(5));
    assert_eq!(line.line_w1(), 1);
    let f = CircleNField::build_explicit(line, vec![vec![rat(1, 1)]; 5], vec![vec![0]; 5]).unwrap();
    let v = verify_circle(&f, Mode::Mod2).unwrap();
    assert!(v.pass);
    assert_eq!(v.rhs, BigInt::from(1));
    let line = LineCocycle::moebius(ngon(5));
    let twist = line
        .signs()
        .iter()
        .position(|&s| s == -1)
        .expect("moebius cocycle has a twisted vertex");
    let matchings: Vec<Vec<usize>> = (0..5)
        .map(|v| if v == twist { vec![1, 0] } else { vec![0, 1] })
        .collect();
    let f = CircleNField::build_explicit(
        line,
        vec![vec![rat(1, 1), rat(-1, 1)]; 5],
        matchings,
    )
    .unwrap();
    let v = verify_circle(&f, Mode::Mod2).unwrap();
    assert!(v.pass);
    assert_eq!(v.rhs, BigInt::zero());
    println!(
        "criterion 07: PASS — S⁰ degree within [-n, n] with lefschetz = coincidences (n ≤ 3); circle sums 0 / parity n·w₁"
    );
}

#[test]
fn criterion_08_resolution_replay() {
    for (_, base) in orientable_bases() {
        for n in 1..=4usize {
            for f in shipped_fields(&base, n) {
                let r = resolve(&f);
                assert!(verify_resolution(&f, &r).pass);
            }
            for seed in 0..RANDOM_DRAWS {
                let f = gen::random_nfield(&base, n, seed);
                let r = resolve(&f);
                let report = verify_resolution(&f, &r);
                assert!(report.covering_ok && report.chi_ok && report.euler_ok && report.index_ok);
            }
        }
    }
    let f = gen::sphere_line_field();
    let r = resolve(&f);
    assert!(verify_resolution(&f, &r).pass);
    assert_eq!(r.tilde.euler_characteristic(), 0);
    println!(
        "criterion 08: PASS — all four resolution checks hold on every criterion-2 field; lemon cover has χ = 0"
    );
}

#[test]
fn criterion_09_any_integer_index() {
    let base = Arc::new(torus_grid(4));
    let vertex = 5usize;
    for z in -3i64..=3 {
        let f = gen::scaled_sections_field(&base, 3, z, vertex).unwrap();
        let report = local_index(&f, vertex, Mode::Integer).unwrap();
        assert_eq!(report.index, BigInt::from(z));
        let v = verify_theorem(&f, Mode::Integer).unwrap();
        assert!(v.pass);
    }
    println!(
        "criterion 09: PASS — scaled-sections n=3 realizes every local index z ∈ [-3, 3] at the designated vertex"
    );
}

#[test]
fn criterion_10_determinism() {
    let bin = env!("CARGO_BIN_EXE_nph");
    let root = std::env::temp_dir().join("nph-acceptance-determinism");
    let _ = std::fs::remove_dir_all(&root);
    let mut artifacts: Vec<Vec<Vec<u8>>> = Vec::new();
    for run in 0..2 {
        let dir = root.join(format!("run{run}"));
        std::fs::create_dir_all(&dir).unwrap();
        let mut files = Vec::new();
        for (gen_args, name) in [
            (vec!["random-nfield", "base=genus2", "n=3"], "rand"),
            (vec!["sphere-line-field"], "lemon"),
        ] {
            let out = dir.join(name);
            let status = Command::new(bin)
                .arg("gen")
                .args(&gen_args)
                .args(["--seed", "42", "--out"])
                .arg(&out)
                .arg("--svg")
                .arg(out.join("atlas.svg"))
                .status()
                .unwrap();
            assert!(status.success());
            let report = out.join("report.json");
            let status = Command::new(bin)
                .arg("verify")
                .arg("--mesh")
                .arg(out.join("mesh.json"))
                .arg("--bundle")
                .arg(out.join("bundle.json"))
                .arg("--field")
                .arg(out.join("field.json"))
                .arg("--out")
                .arg(&report)
                .status()
                .unwrap();
            assert!(status.success());
            for file in ["mesh.json", "bundle.json", "field.json", "atlas.svg", "report.json"] {
                files.push(std::fs::read(out.join(file)).unwrap());
            }
        }
        artifacts.push(files);
    }
    assert_eq!(artifacts[0], artifacts[1]);
    println!("criterion 10: PASS — repeated seeded runs produce byte-identical artifacts");
}
