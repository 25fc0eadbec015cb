use ideal24::assembly::{compile_script, preset, preset_names};
use ideal24::construction::{parse_construction, print_construction};

#[test]
fn presets_round_trip() {
    for name in preset_names() {
        let script = preset(name).unwrap();
        let text = print_construction(&script);
        assert_eq!(parse_construction(&text).unwrap(), script, "{name}:\n{text}");
        assert_eq!(parse_construction(&format!("preset:{name}")).unwrap(), script);
    }
}

#[test]
fn hand_written_g() {
    let text = "\
name G
copies 1
cusp m1 = (+,+,0,0)
cusp n1 = (+,-,0,0)
cusp m2 = (0,0,+,-)
cusp n2 = (0,0,+,+)
cusp a = (+,0,+,0) (+,0,-,0)
cusp b = (+,0,0,+) (+,0,0,-)
cusp c = (0,+,+,0) (0,+,-,0)
cusp d = (0,+,0,+) (0,+,0,-)
paircolor scope=all color=green map=-x,-y,-z,-w   # antipodal
paircolor scope=all color=red map=-x,-y,z,w
boundaryglue src=0 dst=1 seed_src=0:(+,+,+,-) seed_dst=(+,-,+,+) vertices=m1->b;m2->c;b->d;c->a;a->n1;d->n2
";
    let parsed = parse_construction(text).unwrap();
    assert_eq!(compile_script(&parsed).unwrap(), compile_script(&preset("G").unwrap()).unwrap());
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_construction("copies 1\npaircolor scope=all color=green map=-x,-q,z,w\n").unwrap_err();
    assert_eq!((err.line, err.column), (2, 33));
    assert!(err.to_string().starts_with("line 2, column 33:"), "{err}");

    for (text, line) in [
        ("paircolor scope=all color=green map=x,y,z,w\n", 1),
        ("copies 1\nfrobnicate\n", 2),
        ("copies 1\npaircolor scope=all color=green map=x,y,z,w map=x,y,z,w\n", 2),
        ("copies 1\npaircolor scope=all colour=green map=x,y,z,w\n", 2),
        ("copies 1\npair 0:(+,+,+,+)\n", 2),
        ("copies x\n", 1),
    ] {
        assert_eq!(parse_construction(text).unwrap_err().line, line, "{text}");
    }
    assert!(parse_construction("preset:Q").is_err());
}
