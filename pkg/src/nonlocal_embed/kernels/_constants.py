# Switch points for the three J1 branches; both backends must agree on them.
SERIES_MAX = 12.0
ASYMPTOTIC_MIN = 25.0
# Starting order for Miller's backward recurrence, safe for |z| < ASYMPTOTIC_MIN.
RECURRENCE_START = 64
SERIES_TERMS = 40
ASYMPTOTIC_TERMS = 30
