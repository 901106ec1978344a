import compas_pbiharmonic
from compas_pbiharmonic import utilities
from compas_pbiharmonic.utilities import log
from compas_pbiharmonic.utilities import timer
from compas_pbiharmonic.utilities import warn


def test_messages_are_verbose_gated(monkeypatch, capsys):
    monkeypatch.setattr(compas_pbiharmonic, "VERBOSE", False)
    log("hidden {}", 1)
    warn("hidden")
    assert capsys.readouterr().err == ""
    monkeypatch.setattr(compas_pbiharmonic, "VERBOSE", True)
    log("step {}", 2)
    warn("careful")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.splitlines() == ["step 2", "WARNING: careful"]


def test_timer_reports_on_stderr(monkeypatch, capsys):
    monkeypatch.setattr(compas_pbiharmonic, "VERBOSE", True)

    @timer(message="Doubled in")
    def double(x):
        return 2 * x

    assert double(3) == 6
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("Doubled in ")


def test_public_helpers():
    assert utilities.__all__ == ["timer", "log", "warn"]
