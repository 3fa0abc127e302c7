//! Golden regression test: one fixture economy solved once, values frozen.

use std::path::PathBuf;
use trade3x2::io;
use trade3x2::FactorId;

const GOLDEN_W: [f64; 3] = [
    0.15503045574692567,
    0.22266638124310373,
    0.3186364657051997,
];
const GOLDEN_X: [f64; 2] = [0.4555754171605139, 0.304485178675755];

fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden_gl.kv")
}

#[test]
fn fixture_reproduces_frozen_equilibrium() {
    let gl = io::load_gl(&fixture_path()).unwrap();
    let snap = gl.solve_equilibrium().unwrap();
    for (actual, expected) in snap.w.iter().zip(GOLDEN_W) {
        assert!((actual - expected).abs() < 1e-8, "{actual} vs {expected}");
    }
    for (actual, expected) in snap.x.iter().zip(GOLDEN_X) {
        assert!((actual - expected).abs() < 1e-8, "{actual} vs {expected}");
    }
    let (zp, mc) = snap.residuals(&gl);
    assert!(zp < 1e-10 && mc < 1e-10, "residuals {zp:.2e} {mc:.2e}");
    for j in 0..2 {
        let col: f64 = [FactorId::Land, FactorId::Capital, FactorId::Labor]
            .iter()
            .map(|f| snap.economy.distributive().get(*f, j))
            .sum();
        assert!((col - 1.0).abs() < 1e-9);
    }
}

#[test]
fn fixture_economy_sections_match_the_solved_snapshot() {
    let text = std::fs::read_to_string(fixture_path()).unwrap();
    let stored = io::economy_from_str(&text, "golden").unwrap();
    let gl = io::load_gl(&fixture_path()).unwrap();
    let solved = gl.solve_equilibrium().unwrap().economy;
    for f in [FactorId::Land, FactorId::Capital, FactorId::Labor] {
        for j in 0..2 {
            assert!(
                (stored.distributive().get(f, j) - solved.distributive().get(f, j)).abs() < 1e-9
            );
        }
    }
}

#[test]
fn fixture_sits_in_subregion_p2() {
    let gl = io::load_gl(&fixture_path()).unwrap();
    let economy = gl.solve_equilibrium().unwrap().economy;
    let g = economy.ews();
    assert!(g.quadrant_iv());
    assert_eq!(
        trade3x2::classify::subregion_of(&economy).unwrap(),
        trade3x2::classify::Subregion::P2
    );
}
