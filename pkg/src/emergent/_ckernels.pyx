# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled chain kernel; same contract as ``_pykernels.advance_chain``."""


def advance_chain(long long[::1] energies, long long n_a, const long long[:, ::1] draws,
                  long long step0, long long burn_in, long long stride, long long q_a,
                  long long[::1] hist, long long[::1] trace, long long n_samples):
    cdef Py_ssize_t t, n = draws.shape[0]
    cdef long long donor, recipient, step
    with nogil:
        for t in range(n):
            donor = draws[t, 0]
            recipient = draws[t, 1]
            if energies[donor] > 0:
                energies[donor] -= 1
                energies[recipient] += 1
                if donor < n_a:
                    q_a -= 1
                if recipient < n_a:
                    q_a += 1
            step = step0 + t + 1
            if step > burn_in and (step - burn_in) % stride == 0:
                hist[q_a] += 1
                trace[n_samples] = q_a
                n_samples += 1
    return q_a, n_samples
