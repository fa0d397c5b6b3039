from pauligeom.report import Report


def test_check_semantics():
    rep = Report("demo")
    assert rep.check("equal", expected=3, measured=3)
    assert not rep.check("unequal", expected=3, measured=4)
    rep.check("explicit", True)
    rep.info("note", measured=1.23456e-3)
    assert not rep.ok
    assert [c.clause for c in rep.failures()] == ["unequal"]


def test_serialization_is_stable():
    rep = Report("demo")
    rep.check("tiny float", True, measured=3.3e-16)
    rep.check("set", True, measured={3, 1, 2})
    rep.seconds = 0.123456
    d = rep.as_dict()
    assert d["checks"][0]["measured"] == 0.0
    assert d["checks"][1]["measured"] == [1, 2, 3]
    assert "seconds" not in d and rep.as_dict(timings=True)["seconds"] == 0.123
    assert "s)" not in rep.as_text() and "(0.12 s)" in rep.as_text(timings=True)


def test_extend_prefixes():
    a, b = Report("a"), Report("b")
    b.check("x", False)
    a.extend(b, prefix="b: ")
    assert a.checks[0].clause == "b: x" and not a.ok
