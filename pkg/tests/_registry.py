# criterion number -> (passed, seconds, note); filled by test_acceptance.py
RESULTS = {}
