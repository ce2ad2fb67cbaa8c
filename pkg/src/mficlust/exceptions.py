"""Exception hierarchy shared by the library and the CLI."""


class MFIClustError(Exception):
    """Base class for all errors raised by mficlust."""


class DomainError(MFIClustError, ValueError):
    """A numeric argument lies outside its mathematical domain."""


class EmptyCorpus(MFIClustError, ValueError):
    """No documents were supplied."""


class EmptyVocabulary(MFIClustError, ValueError):
    """The document-frequency filter removed every term."""


class EmptyDatabase(MFIClustError, ValueError):
    """No term transaction survived, so no multi-document itemset exists."""


class MalformedMatrix(MFIClustError, ValueError):
    """An injected similarity matrix is not a valid similarity matrix."""
