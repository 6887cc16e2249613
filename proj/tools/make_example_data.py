#!/usr/bin/env python3
"""Generate the bundled example sensor log (data/airquality.csv).

Writes an hourly multi-sensor log in the European CSV dialect
(';' field separator, ',' decimal mark, -200 missing sentinel,
trailing unnamed columns) with the column layout of a typical
air-quality monitoring station export.

The generating process is constructed so that temperature can be
inferred from several partially overlapping sensor subsets, and so
that the response of one sensor family to temperature drifts in the
later part of the record.
"""

import numpy as np

N = 9357  # hourly rows, ~13 months
SEED = 20260826

rng = np.random.default_rng(SEED)


def ar1(n, rho, sigma, rng):
    x = np.empty(n)
    x[0] = rng.normal(0, sigma / np.sqrt(1 - rho * rho))
    eps = rng.normal(0, sigma, n)
    for t in range(1, n):
        x[t] = rho * x[t - 1] + eps[t]
    return x


def main():
    t = np.arange(N)
    hour = t % 24

    # True ambient temperature: seasonal + diurnal + slow AR(1) weather.
    season = 7.0 * np.sin(2 * np.pi * t / 8760.0 - 1.2)
    diurnal = 4.5 * np.sin(2 * np.pi * hour / 24.0 - 2.2)
    weather = ar1(N, 0.995, 0.22, rng)
    T = 16.0 + season + diurnal + weather

    # Relative humidity anticorrelated with temperature.
    RH = 62.0 - 1.2 * (T - 16.0) + ar1(N, 0.97, 2.4, rng)
    RH = np.clip(RH, 8.0, 97.0)

    # Absolute humidity rises with temperature, damped by RH deficit.
    AH = 0.85 + 0.030 * T + 0.004 * (RH - 62.0) + ar1(N, 0.95, 0.045, rng)
    AH = np.clip(AH, 0.15, 2.3)

    # Latent traffic/pollution level: double diurnal peak + AR(1).
    traffic = (
        1.0
        + 0.9 * np.exp(-0.5 * ((hour - 8.5) / 1.8) ** 2)
        + 0.8 * np.exp(-0.5 * ((hour - 18.5) / 2.2) ** 2)
        + 0.25 * ar1(N, 0.9, 0.4, rng)
    )

    # Sensor family gains. The CO/NOx family (used by model A) loses
    # part of its temperature response in the last 40% of the record;
    # the NMHC/NO2 family stays put.
    shift = t >= int(0.6 * N)
    gainA = np.where(shift, 0.78, 1.0)
    gainB = np.where(shift, 0.92, 1.0)

    s1 = 1050.0 + 160.0 * traffic - 14.0 * gainA * (T - 16.0) \
        + 1.1 * (RH - 62.0) + rng.normal(0, 18.0, N)
    s3 = 940.0 - 120.0 * traffic + 19.0 * gainA * (T - 16.0) \
        - 0.9 * (RH - 62.0) + rng.normal(0, 16.0, N)
    s2 = 890.0 + 140.0 * traffic + 13.5 * gainB * (T - 16.0) \
        + 55.0 * (AH - 1.5) + rng.normal(0, 17.0, N)
    s4 = 1450.0 + 95.0 * traffic + 16.0 * gainB * (T - 16.0) \
        + 40.0 * (AH - 1.5) + rng.normal(0, 20.0, N)

    # Ground-truth analyzers (never used as features, but their gaps
    # drive row dropping exactly like in real station exports).
    co = np.clip(0.9 + 1.1 * traffic + rng.normal(0, 0.25, N), 0.05, None)
    nmhc = np.clip(90.0 + 130.0 * traffic + rng.normal(0, 30.0, N), 5.0, None)
    c6h6 = np.clip(1.0 + 7.5 * traffic + rng.normal(0, 1.2, N), 0.1, None)
    nox = np.clip(80.0 + 220.0 * traffic - 3.0 * (T - 16.0)
                  + rng.normal(0, 40.0, N), 2.0, None)
    no2 = np.clip(50.0 + 75.0 * traffic + rng.normal(0, 18.0, N), 2.0, None)

    # Missingness: analyzer outages (bursty) plus sparse sensor dropouts.
    missing = np.zeros(N, dtype=bool)

    def outage_mask(p_start, mean_len):
        m = np.zeros(N, dtype=bool)
        i = 0
        while i < N:
            if rng.random() < p_start:
                span = max(1, int(rng.exponential(mean_len)))
                m[i:i + span] = True
                i += span
            else:
                i += 1
        return m

    cols = {}
    masks = {
        "CO(GT)": outage_mask(0.004, 30),
        "NMHC(GT)": outage_mask(0.010, 45),
        "C6H6(GT)": outage_mask(0.002, 20),
        "NOx(GT)": outage_mask(0.003, 25),
        "NO2(GT)": outage_mask(0.003, 25),
        "PT08.S1(CO)": rng.random(N) < 0.003,
        "PT08.S2(NMHC)": rng.random(N) < 0.003,
        "PT08.S3(NOx)": rng.random(N) < 0.003,
        "PT08.S4(NO2)": rng.random(N) < 0.003,
        "T": rng.random(N) < 0.002,
        "RH": rng.random(N) < 0.002,
        "AH": rng.random(N) < 0.002,
    }
    values = {
        "CO(GT)": (co, 1), "PT08.S1(CO)": (s1, 0), "NMHC(GT)": (nmhc, 0),
        "C6H6(GT)": (c6h6, 1), "PT08.S2(NMHC)": (s2, 0), "NOx(GT)": (nox, 0),
        "PT08.S3(NOx)": (s3, 0), "NO2(GT)": (no2, 0), "PT08.S4(NO2)": (s4, 0),
        "T": (T, 1), "RH": (RH, 1), "AH": (AH, 4),
    }

    def fmt(v, dec):
        s = f"{v:.{dec}f}" if dec else f"{v:.0f}"
        return s.replace(".", ",")

    header = ["Date", "Time", "CO(GT)", "PT08.S1(CO)", "NMHC(GT)",
              "C6H6(GT)", "PT08.S2(NMHC)", "NOx(GT)", "PT08.S3(NOx)",
              "NO2(GT)", "PT08.S4(NO2)", "T", "RH", "AH"]

    lines = [";".join(header) + ";;"]
    day0 = np.datetime64("2024-03-10")
    for i in range(N):
        date = (day0 + np.timedelta64(i // 24, "D")).astype(object)
        row = [f"{date.day:02d}/{date.month:02d}/{date.year}",
               f"{hour[i]:.0f}.00.00".zfill(8)]
        for name in header[2:]:
            v, dec = values[name]
            if masks[name][i]:
                row.append("-200")
            else:
                row.append(fmt(v[i], dec))
        lines.append(";".join(row) + ";;")
    # station exports end with a block of empty lines
    lines += [";" * 15] * 6

    with open("data/airquality.csv", "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote data/airquality.csv ({N} data rows)")


if __name__ == "__main__":
    main()
