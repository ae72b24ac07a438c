'''Exception hierarchy shared across the package.

Every error carries a stable ``code`` string plus a ``details`` mapping so the
service layer can serialize failures without guessing at exception internals.
'''


class MGError(Exception):
    '''Base class for all domain errors.'''

    code = 'error'

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def payload(self):
        '''JSON-friendly description of the failure.'''
        return {'error': self.code, 'message': self.message, 'details': self.details}


class InvalidInput(MGError):
    code = 'invalid_input'


class InvalidOrder(MGError):
    '''The given relation is not a bounded lattice order.'''

    code = 'invalid_order'


class NotDistributive(MGError):
    code = 'not_distributive'


class NotPrelinear(MGError):
    code = 'not_prelinear'


class NotSubuniverse(MGError):
    code = 'not_subuniverse'


class NotMRelativelyComplete(MGError):
    '''The designated image fails the relative-completeness condition (s2).'''

    code = 'not_m_relatively_complete'


class NotMonadicFilter(MGError):
    code = 'not_monadic_filter'


class BoundExceeded(MGError):
    code = 'bound_exceeded'


class TooLarge(MGError):
    code = 'too_large'


class InvalidCoordinates(MGError):
    code = 'invalid_coordinates'


class OutOfRange(MGError):
    code = 'out_of_range'


class TruncationTooShort(MGError):
    code = 'truncation_too_short'


class TermSyntaxError(MGError):
    '''Unparseable term text; ``position`` is a 0-based character offset.'''

    code = 'syntax_error'

    def __init__(self, message, position):
        super().__init__(message, position=position)
        self.position = position


class UnboundVariable(MGError):
    code = 'unbound_variable'


class UnknownName(MGError):
    code = 'unknown_name'


class InvalidSpace(MGError):
    code = 'invalid_space'


class NotExistsPrime(MGError):
    code = 'not_exists_prime'


class NotInteriorOperator(MGError):
    code = 'not_interior_operator'


class NotFSI(MGError):
    code = 'not_fsi'


class NotInW1(MGError):
    code = 'not_in_w1'


class MalformedForest(MGError):
    code = 'malformed_forest'
