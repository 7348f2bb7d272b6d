from __future__ import annotations

from app.scripts.oracles import main, oracle_rows


def test_oracle_rows_agree_with_closed_forms():
    rows = oracle_rows(max_genus=3)
    assert len(rows) == 3 + 5 + 7
    for g, k, nullity, closed, constant in rows:
        if closed is not None:
            assert nullity == closed
        assert constant == str(g - k)


def test_oracle_script_reports_no_mismatches(capsys):
    main()
    assert "Oracle mismatches: 0" in capsys.readouterr().out
