import pandas as pd

from community_gsp.src.errors import InvalidPartitionError


def within_community_variability(x, p):
    """Population standard deviation of x inside each community, averaged over communities."""
    if p.n != len(x.values):
        raise InvalidPartitionError("partition labels {count} nodes but the signal has {n} entries".format(
            count=p.n, n=len(x.values)))
    per_community = pd.Series(x.values).groupby(p.labels).std(ddof=0)
    return float(per_community.mean())
