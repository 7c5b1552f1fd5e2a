def test_import():
    import tubulene_gp  # noqa: F401
    import tubulene_gp.cli  # noqa: F401
