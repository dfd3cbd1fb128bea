"""Shared test plumbing."""

_capmanager = None


def pytest_configure(config):
    global _capmanager
    _capmanager = config.pluginmanager.getplugin("capturemanager")


def emit(line):
    """Print a line even under fd-level capture (criterion reporting)."""
    if _capmanager is None:
        print(line, flush=True)
    else:
        with _capmanager.global_and_fixture_disabled():
            print(line, flush=True)
