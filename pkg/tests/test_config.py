import pytest

from stmcirc.config import builtin_config, load_config, parse_config
from stmcirc.errors import ConfigError

BASE = """
junction.l0_nH = 25
junction.c0_pF = 1.2
junction.dc_ratio = 0.544
junction.fm_MHz = 110   # modulation
junction.q0 = 50
junction.z0_ohm = 50
spec.alpha_dB = 3
spec.beta_dB = 20
grid.f_start_MHz = 900
grid.f_stop_MHz = 1100
grid.points = 201
"""


def test_builtin_configs():
    cfg = builtin_config()
    assert cfg.junction.l0 == pytest.approx(25e-9)
    assert cfg.df is None and cfg.f_lo is None
    assert cfg.budget.rho_db == pytest.approx(14.33, abs=0.01)
    fig7 = builtin_config("table1_fig7.cfg")
    assert (fig7.f_lo, fig7.f_hi) == (972e6, 1045e6)


def test_parse_units():
    cfg = parse_config(BASE + "synth.df_MHz = 80\nfilter.q = 100\n")
    assert cfg.junction.fm == pytest.approx(110e6)
    assert cfg.df == pytest.approx(80e6)
    assert cfg.filter_q == 100
    assert len(cfg.freqs()) == 201


@pytest.mark.parametrize(
    "extra,fragment",
    [
        ("bogus.key = 1\n", "unknown key"),
        ("junction.q0 = 60\n", "duplicate key"),
        ("not a pair\n", "expected 'key = value'"),
        ("synth.df_MHz = abc\n", "not a number"),
        ("synth.df_MHz = -5\n", "must be positive"),
        ("synth.f_lo_MHz = 970\n", "together"),
    ],
)
def test_errors_carry_line_numbers(extra, fragment):
    with pytest.raises(ConfigError, match=fragment) as exc:
        parse_config(BASE + extra, "x.cfg")
    assert "x.cfg" in str(exc.value)


def test_missing_keys():
    with pytest.raises(ConfigError, match="junction.q0"):
        parse_config(BASE.replace("junction.q0 = 50\n", ""))


def test_invalid_junction():
    with pytest.raises(ConfigError, match="dc_ratio"):
        parse_config(BASE.replace("0.544", "1.5"))


def test_line_number_reported():
    with pytest.raises(ConfigError, match=r"x.cfg:13"):
        parse_config(BASE + "spec.alpha_dB = 2\n", "x.cfg")


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")
