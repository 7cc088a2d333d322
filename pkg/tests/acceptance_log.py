"""Shared record of acceptance verdicts, printed at the end of the pytest run."""
RESULTS = {}


def record(k, ok, detail=""):
    RESULTS[k] = (bool(ok), detail)
    print("CRITERION %2d: %s  %s" % (k, "PASS" if ok else "FAIL", detail))
