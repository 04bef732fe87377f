import check_setup


def test_each_stage_passes(capsys):
    assert check_setup.check_packages()
    assert check_setup.check_grammars()
    assert check_setup.check_systems()
    assert check_setup.check_reports()
    out = capsys.readouterr().out
    assert "❌" not in out
    assert "data/example_p.lts" in out


def test_main(capsys):
    assert check_setup.main() == 0
    assert "Setup looks good" in capsys.readouterr().out


def test_missing_data_is_reported(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(check_setup, "ROOT", tmp_path)
    assert not check_setup.check_systems()
    assert "no example LTS files" in capsys.readouterr().out
