#!/usr/bin/env python3
"""Independent pandas/scikit-learn cross-check for the bundled dataset.

Runs the standard pipeline (clean -> temporal split -> standardize ->
OLS per feature subset -> metrics -> disagreement statistics) with an
entirely separate numerical stack, and freezes the results into
tests/data/expected_audit.json. The C++ acceptance suite asserts
agreement with these values.
"""

import json
import sys

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression
from sklearn.metrics import mean_squared_error
from sklearn.preprocessing import StandardScaler
from scipy.stats import norm


def main(path="data/airquality.csv", out="tests/data/expected_audit.json"):
    df = pd.read_csv(path, sep=";", decimal=",")
    df = df.loc[:, ~df.columns.str.contains("^Unnamed")]
    n_raw = len(df)
    df = df.replace(-200, np.nan)
    df = df.dropna().reset_index(drop=True)

    y = df["T"].values
    sensors_A = ["AH", "RH", "PT08.S1(CO)", "PT08.S3(NOx)"]
    sensors_B = ["AH", "RH", "PT08.S2(NMHC)", "PT08.S4(NO2)"]

    n = len(df)
    train_frac, gap_frac = 0.6, 0.2
    train_end = int(train_frac * n)
    gap_end = int((train_frac + gap_frac) * n)
    df_train, df_test = df.iloc[:train_end], df.iloc[gap_end:]
    y_train, y_test = df_train["T"].values, df_test["T"].values

    out_doc = {"n_raw": n_raw, "n_clean": n,
               "n_train": train_end, "n_test": n - gap_end,
               "models": {}}

    preds = {}
    for label, sensors in (("A", sensors_A), ("B", sensors_B)):
        Xtr = df_train[sensors].values
        Xte = df_test[sensors].values
        scaler = StandardScaler()
        Xtr = scaler.fit_transform(Xtr)
        Xte = scaler.transform(Xte)
        f = LinearRegression().fit(Xtr, y_train)
        ptr, pte = f.predict(Xtr), f.predict(Xte)
        preds[label] = pte
        sigma = np.std(y_train - ptr)
        levels = np.linspace(0.1, 0.9, 9)
        cov = []
        for alpha in levels:
            z = norm.ppf(1 - (1 - alpha) / 2)
            lower, upper = pte - z * sigma, pte + z * sigma
            cov.append(float(np.mean((y_test >= lower) & (y_test <= upper))))
        out_doc["models"][label] = {
            "features": sensors,
            "mse_train": mean_squared_error(y_train, ptr),
            "mse_test": mean_squared_error(y_test, pte),
            "sigma": float(sigma),
            "coverage": cov,
        }

    d = preds["A"] - preds["B"]
    mean_d = float(np.mean(d))
    std_d = float(np.std(d))
    rel = mean_d / float(np.std(y_test))
    r = float(np.corrcoef(d, y_test)[0, 1])
    slope = float(np.cov(d, y_test, bias=True)[0, 1] / np.var(y_test))
    out_doc["disagreement"] = {
        "mean": mean_d, "std": std_d, "relative_mean": rel,
        "pearson_r": r, "slope": slope,
    }
    with open(out, "w") as f:
        json.dump(out_doc, f, indent=1)
    print(json.dumps({k: v for k, v in out_doc.items() if k != "models"},
                     indent=1))
    for m, v in out_doc["models"].items():
        print(m, "mse_train", v["mse_train"], "mse_test", v["mse_test"])
    print("disagreement", out_doc["disagreement"])


if __name__ == "__main__":
    main(*sys.argv[1:])
