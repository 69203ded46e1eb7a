"""Pure-Python chain kernel; same contract as ``_ckernels.advance_chain``."""


def advance_chain(energies, n_a, draws, step0, burn_in, stride, q_a, hist, trace, n_samples):
    """Apply one energy-unit move per row of ``draws`` (donor, recipient).

    ``energies``, ``hist`` and ``trace`` are int64 arrays updated in place.
    Step numbers run from ``step0 + 1``; a sample of ``q_a`` is recorded
    after step t when ``t > burn_in`` and ``(t - burn_in) % stride == 0``.
    Returns the updated ``(q_a, n_samples)``.
    """
    e = energies.tolist()
    h = hist.tolist()
    recorded = []
    step = step0
    for donor, recipient in draws.tolist():
        step += 1
        if e[donor]:
            e[donor] -= 1
            e[recipient] += 1
            if donor < n_a:
                q_a -= 1
            if recipient < n_a:
                q_a += 1
        if step > burn_in and (step - burn_in) % stride == 0:
            h[q_a] += 1
            recorded.append(q_a)
    energies[:] = e
    hist[:] = h
    if recorded:
        trace[n_samples:n_samples + len(recorded)] = recorded
    return q_a, n_samples + len(recorded)
