use pwcycle_web::{analyze_text, portrait_svg, solve_json};

const SYSTEM: &str = include_str!("../../../fixtures/global_center_saddle.toml");

#[test]
fn analyze_reports_the_bound() {
    let text = analyze_text(SYSTEM).unwrap();
    assert!(text.starts_with("discontinuous; bound <=1"), "{text}");
}

#[test]
fn solve_finds_the_cycle() {
    let v: serde_json::Value = serde_json::from_str(&solve_json(SYSTEM, true).unwrap()).unwrap();
    assert_eq!(v["verified"], 1);
    let y = v["candidates"][0]["ordinates"][0][0].as_f64().unwrap();
    assert!((y - (1.0 - 5f64.sqrt() / 5.0)).abs() < 1e-9);
}

#[test]
fn portrait_is_svg() {
    let svg = portrait_svg(SYSTEM, -3.0, 3.0).unwrap();
    assert!(svg.contains("<svg") && svg.contains("polyline"));
    assert!(portrait_svg(SYSTEM, 1.0, 1.0).is_err());
}

#[test]
fn errors_are_messages() {
    let e = solve_json("version = 1\nboundaries = [0]\n[[zones]]\nkind = \"nope\"\n", false).unwrap_err();
    assert!(e.contains("input"), "{e}");
}
