import pytest

TOPIC_A = "Java servlets and java beans. Servlet containers host java code."
TOPIC_B = "Python scripts with django. Django models, python views."


def two_topic_texts():
    """Eight documents, four per topic; 'web' and 'page' appear once in six of them."""
    texts = []
    for i in range(8):
        base = TOPIC_A if i < 4 else TOPIC_B
        extra = " web page" if i % 4 != 3 else ""
        texts.append(f"{base} note{chr(97 + i)}{extra}")
    return texts


@pytest.fixture
def two_topic_dir(tmp_path):
    root = tmp_path / "corpus"
    root.mkdir()
    for i, text in enumerate(two_topic_texts()):
        if i == 0:
            (root / f"doc{i}.html").write_text(f"<html><body><p>{text}</p><script>var x;</script></body></html>", encoding="utf-8")
        else:
            (root / f"doc{i}.txt").write_text(text, encoding="utf-8")
    return root


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        item.config._criteria = getattr(item.config, "_criteria", [])
        item.config._criteria.append((marker.args[0], marker.args[1], report.outcome))


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(results):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.line(f"{status}  criterion {number}: {title}")
