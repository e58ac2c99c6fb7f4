//! Parse, emit, parse again: canonical form is a fixed point for every fixture.

use dtn::format::{emit_doctrine, parse};
use dtn::{fixtures, Config};

#[test]
fn fixtures_round_trip() {
    let cfg = Config::default();
    for name in fixtures::NAMES {
        let d = fixtures::load(name, &cfg).unwrap().doctrine.unwrap();
        let once = emit_doctrine(&d).unwrap();
        let again = parse(&once, &cfg).unwrap_or_else(|e| panic!("{name}: {e}\n{once}")).doctrine.unwrap();
        assert_eq!(emit_doctrine(&again).unwrap(), once, "{name}");
        let (c, c2) = (d.base(), again.base());
        assert_eq!(c.num_objects(), c2.num_objects());
        for a in c.objects() {
            assert_eq!(c.name(a), c2.name(a));
            assert!(d.fiber(a).isomorphic(again.fiber(a)), "{name}: fiber over {}", c.name(a));
        }
    }
}

#[test]
fn errors_carry_positions() {
    let cfg = Config::default();
    let e = parse("base {\n  objects a;\n  arrow f a q;\n}", &cfg).unwrap_err().to_string();
    assert!(e.starts_with("3:"), "{e}");
    let e = parse("base { objects a; }\nfiber a { elements x; top y; }", &cfg).unwrap_err().to_string();
    assert!(e.contains('y'), "{e}");
}
