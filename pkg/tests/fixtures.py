"""Reference values frozen from tests/oracles/compute_fixtures.py (mpmath, 50 digits)."""

import mpmath

_RAW = {
    'log_gamma_171_5': '709.143163030928242272363904617',
    'upper_gamma_m3_1': '0.0860624913245607282523139608105',
    'upper_gamma_m3_1_gammainc': '0.0860624913245607282523139608105',
    'I0': '0.148495506775922047918359994701',
    'I0_identity': '0.148495506775922047918359994701',
    'I_m10': '40319.9546318312498891910007335',
    'I_m5': '5.88607105874307714552838032258',
    'I_21': '0.0159633452314438977366373546463',
    'I_m3': '0.735758882342884643191047540323',
    'log_I_m2001': '13198.9234480542646739479269435',
    'log_I_1999': '-8.60140258445863965953907206761',
    'log_gamma_598': '3223.08955337209436859813534409',
    'diag_ratio_0.05': '1.000000213693050901903397042',
    'diag_ratio_0.1': '1.0007080129441608443846324696',
    'diag_ratio_0.3': '1.20946831840057565307118509591',
    'diag_ratio_0.5': '2.19651191009774591480716312328',
    'diag_ratio_0.9': '5.92862822948357130445107144668',
    'diag_ratio_0.95': '5.71657496999760693767012539188',
    'sinh_series_0.2': '9275.40132222359075278677027422',
    'poly_t05_w025': '0.990297423682904311450832305429',
    'hinf_norm_000_2': '0.594809075744441813580891495426',
    'hinf_norm_m5_0_2': '388.18947111278599865073053077',
    'hinf_diag_05_09e2': '5925.90419859063979530683491143',
    'hinf_diag_05_0': '35.1218057219837614787968842552',
    'rho_3_3': '1.41339642787660145446552931365',
    'rho_3_2': '-0.679596147181589891601699586093',
    'log_ratio_tilde_3_7_3': '10.7235448071026028773953052345',
    'hartogs_t2_diag_05_0': '2.88202477915982994329257139797',
}

REF = {name: float(text) for name, text in _RAW.items()}

with mpmath.workdps(40):
    REF_MP = {name: mpmath.mpf(text) for name, text in _RAW.items()}
