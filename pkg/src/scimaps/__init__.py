"""Journal citation maps and country co-authorship networks."""

__version__ = "0.1.0"

from .citation import (  # noqa: E402
    CitationEnvironment,
    JournalCitationMatrix,
    build_matrix,
    citation_environment,
    find_seed_journals,
)
from .factors import (  # noqa: E402
    ClusterTimeline,
    FactorModel,
    assign_clusters,
    central_tendency_journal,
    compare_years,
    correlation_matrix,
    fit,
)
from .formats import read_net, write_dl, write_net  # noqa: E402
from .network import (  # noqa: E402
    build_affiliation,
    cosine_normalize,
    international_share,
    k_core,
    project,
    threshold_network,
)
from .records import BiblioRecord, CitedRef, extract_country, parse_corpus, parse_file  # noqa: E402
from .stimulus import StimulusMap, embed  # noqa: E402
