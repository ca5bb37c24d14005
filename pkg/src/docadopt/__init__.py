"""docadopt: map OSS documentation sections to practitioner adoption criteria.

Pipeline: discover documented projects, mirror their sites, extract
innermost sections and sentences, embed and cluster sentences under seed
guidance, merge topics into adoption criteria, and predict a criterion
label per section.
"""

__version__ = "1.0.0"
