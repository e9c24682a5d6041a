import os

# Pin BLAS threading before numpy initializes: keeps the tiny-matrix hot
# paths fast on few-core runners and the replay checks bit-stable.
for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
    os.environ[var] = "1"
